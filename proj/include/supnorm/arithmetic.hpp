#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace supnorm {

using i64 = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// enumeration box or similar cap exceeded; never silently truncate
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// best known exponent towards Ramanujan
inline Rational ramanujan_theta() { return Rational(7, 64); }

i64 mod_floor(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 a, i64 e, i64 m);
i64 mod_inverse(i64 a, i64 c);
int p_adic_valuation(i64 n, i64 p);
bool is_prime(std::uint64_t n);
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);
i64 primitive_root(i64 p);
i64 isqrt(i64 n);  // floor sqrt, n >= 0
bool is_square(i64 n);

// x mod 1 in [0,1)
Rational frac(const Rational& x);
// e(x) = exp(2 pi i x) for exact x
std::complex<double> e_turns(const Rational& x);
// e(num/den) with num reduced first; den > 0
std::complex<double> e_ratio(__int128 num, __int128 den);

class SquarefreeModulus {
public:
    explicit SquarefreeModulus(i64 value = 1);
    i64 value() const { return value_; }
    const std::vector<i64>& primes() const { return primes_; }
    bool coprime_to(i64 a) const;
    bool operator==(const SquarefreeModulus& o) const { return value_ == o.value_; }

private:
    i64 value_;
    std::vector<i64> primes_;
};

std::vector<i64> primes_in_interval(double lo, double hi, const SquarefreeModulus& excluded);

// chi(g_p) = e(exps[i] / (p-1)) on the i-th prime with fixed primitive root g_p
class DirichletCharacter {
public:
    DirichletCharacter(SquarefreeModulus mod, std::vector<i64> exps);

    static DirichletCharacter trivial(const SquarefreeModulus& mod);
    // product of the quadratic characters at each prime of mod
    static DirichletCharacter real(const SquarefreeModulus& mod);
    static std::vector<DirichletCharacter> all(const SquarefreeModulus& mod, bool even_only);
    // "trivial", "trivial:15", "real:3", "15:1,3" (exponent k_i per prime, chi(g_p) = e(k_i/(p-1)))
    static DirichletCharacter parse(const std::string& spec);

    const SquarefreeModulus& modulus() const { return mod_; }
    const std::vector<i64>& exponents() const { return exps_; }
    std::string spec() const;

    // common denominator of all values' angles
    i64 angle_denominator() const { return den_; }
    // chi(a) = e(k/den); nullopt when (a,N) > 1
    std::optional<i64> angle_numerator(i64 a) const;
    std::optional<Rational> angle(i64 a) const;
    std::complex<double> operator()(i64 a) const;

    DirichletCharacter conj() const;
    DirichletCharacter operator*(const DirichletCharacter& o) const;
    bool is_even() const;
    bool is_trivial() const;
    // the component on the primes dividing d
    DirichletCharacter restrict_to(i64 d) const;

private:
    struct PrimeData {
        i64 p;
        i64 g;
        std::vector<std::uint32_t> dlog;  // dlog[a] for 1 <= a < p, empty for large p
    };
    i64 dlog_at(const PrimeData& pd, i64 a) const;

    SquarefreeModulus mod_;
    std::vector<i64> exps_;
    i64 den_ = 1;
    std::shared_ptr<const std::vector<PrimeData>> data_;
};

}  // namespace supnorm
