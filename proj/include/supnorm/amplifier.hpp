#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "supnorm/arithmetic.hpp"

namespace supnorm {

using cplx = std::complex<double>;

// synthetic Hecke eigenvalues: lambda(p) given, everything else by recursion
class HeckeSystem {
public:
    HeckeSystem(DirichletCharacter chi, std::map<i64, double> prime_values);
    // lambda(p) = 2 cos(theta), theta uniform, for every prime <= p_max
    static HeckeSystem random(const DirichletCharacter& chi, i64 p_max, std::uint64_t seed);

    const DirichletCharacter& chi() const { return chi_; }
    const std::map<i64, double>& prime_values() const { return primes_; }
    bool has_prime(i64 p) const { return primes_.count(p) != 0; }

    // lambda(n); throws DomainError when a prime of n has no value
    cplx operator()(i64 n) const;
    cplx prime_power(i64 p, int k) const;

private:
    DirichletCharacter chi_;
    std::map<i64, double> primes_;
    mutable std::map<std::pair<i64, int>, cplx> cache_;
};

// how the coefficient at p^2 is chosen
enum class SquareCoefficient {
    ConjChiP,      // -conj chi(p); makes the diagonal value exactly #Lambda1
    ConjChiPSquared  // -conj chi(p^2), read literally
};

struct AmplifierTerm {
    i64 ell;
    i64 prime;
    int power;  // 1 or 2
    cplx coeff;
};

struct Amplifier {
    double L = 0;
    i64 N = 1;
    bool is_variant = false;
    SquareCoefficient square_rule = SquareCoefficient::ConjChiP;
    std::vector<i64> lambda1;  // primes
    std::vector<i64> lambda2;  // their squares
    std::vector<AmplifierTerm> terms;
    std::string chi_spec;
};

// primes in [L, 2L] not dividing N, and their squares
Amplifier build_amplifier(const HeckeSystem& sys, double L, const SquarefreeModulus& N,
                          SquareCoefficient rule = SquareCoefficient::ConjChiP);
// primes p <= sqrt L and squares p^2 <= L, p not dividing N
Amplifier build_is_amplifier(const HeckeSystem& sys, double L, const SquarefreeModulus& N,
                             SquareCoefficient rule = SquareCoefficient::ConjChiP);

// sum_ell lambda(ell) alpha(ell)
cplx amplifier_diagonal_value(const HeckeSystem& sys, const Amplifier& amp);

// the same sum in Q[x]/(x^m - 1), x = e(1/m), with rational prime values;
// returns the coefficient vector (index j <-> e(j/m))
std::vector<Rational> amplifier_diagonal_exact(const DirichletCharacter& chi, const std::map<i64, Rational>& prime_values,
                                               const Amplifier& amp);

}  // namespace supnorm
