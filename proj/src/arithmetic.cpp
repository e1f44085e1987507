#include "supnorm/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace supnorm {

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(mod_floor(a, m)) * mod_floor(b, m) % m);
}

i64 pow_mod(i64 a, i64 e, i64 m) {
    i64 r = 1 % m;
    a = mod_floor(a, m);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 mod_inverse(i64 a, i64 c) {
    if (c <= 0) throw DomainError("mod_inverse: modulus must be positive");
    i64 old_r = mod_floor(a, c), r = c, old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1 && c != 1) throw DomainError("mod_inverse: arguments not coprime");
    return mod_floor(old_s, c);
}

int p_adic_valuation(i64 n, i64 p) {
    if (n == 0) throw DomainError("p_adic_valuation: n = 0");
    if (p < 2) throw DomainError("p_adic_valuation: bad prime");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulm = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    // these bases are deterministic below 3.3e24
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = 1, b = a % n, e = d;
        while (e) {
            if (e & 1) x = mulm(x, b);
            b = mulm(b, b);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulm(x, x);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n == 0) throw DomainError("factorize: n = 0");
    n = n < 0 ? -n : n;
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

i64 primitive_root(i64 p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw DomainError("primitive_root: not prime");
    if (p == 2) return 1;
    auto fs = factorize(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw DomainError("primitive_root: none found");
}

i64 isqrt(i64 n) {
    if (n < 0) throw DomainError("isqrt: negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

Rational frac(const Rational& x) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

std::complex<double> e_turns(const Rational& x) {
    Rational f = frac(x);
    // fold to [-1/2, 1/2] before going to double
    if (f > Rational(1, 2)) f -= 1;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(f);
    return {std::cos(ang), std::sin(ang)};
}

std::complex<double> e_ratio(__int128 num, __int128 den) {
    __int128 r = num % den;
    if (r < 0) r += den;
    if (2 * r > den) r -= den;
    double ang = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(den));
    return {std::cos(ang), std::sin(ang)};
}

SquarefreeModulus::SquarefreeModulus(i64 value) : value_(value) {
    if (value < 1) throw DomainError("SquarefreeModulus: value must be positive");
    for (auto [p, e] : factorize(value)) {
        if (e > 1) throw DomainError("SquarefreeModulus: " + std::to_string(value) + " is not square-free");
        primes_.push_back(p);
    }
}

bool SquarefreeModulus::coprime_to(i64 a) const { return std::gcd(a, value_) == 1; }

std::vector<i64> primes_in_interval(double lo, double hi, const SquarefreeModulus& excluded) {
    if (!(lo >= 2.0) || hi < lo) throw DomainError("primes_in_interval: need 2 <= lo <= hi");
    std::vector<i64> out;
    i64 a = static_cast<i64>(std::ceil(lo)), b = static_cast<i64>(std::floor(hi));
    for (i64 n = a; n <= b; ++n) {
        if (is_prime(static_cast<std::uint64_t>(n)) && excluded.value() % n != 0) out.push_back(n);
    }
    return out;
}

// ---- characters

namespace {
constexpr i64 kDlogTableMax = i64{1} << 22;

i64 bsgs(i64 a, i64 g, i64 p) {
    i64 m = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
    std::unordered_map<i64, i64> baby;
    i64 cur = 1;
    for (i64 j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mul_mod(cur, g, p);
    }
    i64 factor = pow_mod(mod_inverse(g, p), m, p), gamma = mod_floor(a, p);
    for (i64 i = 0; i <= m; ++i) {
        auto it = baby.find(gamma);
        if (it != baby.end()) return mod_floor(i * m + it->second, p - 1);
        gamma = mul_mod(gamma, factor, p);
    }
    throw DomainError("discrete log failed");
}
}  // namespace

DirichletCharacter::DirichletCharacter(SquarefreeModulus mod, std::vector<i64> exps)
    : mod_(std::move(mod)), exps_(std::move(exps)) {
    const auto& ps = mod_.primes();
    if (exps_.size() != ps.size()) throw DomainError("DirichletCharacter: one exponent per prime required");
    auto data = std::make_shared<std::vector<PrimeData>>();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        i64 p = ps[i];
        exps_[i] = mod_floor(exps_[i], p - 1 > 0 ? p - 1 : 1);
        den_ = std::lcm(den_, p - 1 > 0 ? p - 1 : 1);
        PrimeData pd{p, primitive_root(p), {}};
        if (p <= kDlogTableMax) {
            pd.dlog.assign(static_cast<std::size_t>(p), 0);
            i64 x = 1;
            for (i64 k = 0; k < p - 1; ++k) {
                pd.dlog[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(k);
                x = mul_mod(x, pd.g, p);
            }
        }
        data->push_back(std::move(pd));
    }
    data_ = std::move(data);
}

DirichletCharacter DirichletCharacter::trivial(const SquarefreeModulus& mod) {
    return DirichletCharacter(mod, std::vector<i64>(mod.primes().size(), 0));
}

DirichletCharacter DirichletCharacter::real(const SquarefreeModulus& mod) {
    std::vector<i64> e;
    for (i64 p : mod.primes()) e.push_back(p == 2 ? 0 : (p - 1) / 2);
    return DirichletCharacter(mod, e);
}

std::vector<DirichletCharacter> DirichletCharacter::all(const SquarefreeModulus& mod, bool even_only) {
    std::vector<DirichletCharacter> out;
    const auto& ps = mod.primes();
    std::vector<i64> e(ps.size(), 0);
    while (true) {
        DirichletCharacter ch(mod, e);
        if (!even_only || ch.is_even()) out.push_back(std::move(ch));
        std::size_t i = 0;
        for (; i < ps.size(); ++i) {
            if (++e[i] < std::max<i64>(ps[i] - 1, 1)) break;
            e[i] = 0;
        }
        if (i == ps.size()) break;
    }
    return out;
}

DirichletCharacter DirichletCharacter::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "trivial") return trivial(SquarefreeModulus(tail.empty() ? 1 : std::stoll(tail)));
        if (head == "real") return real(SquarefreeModulus(std::stoll(tail)));
        SquarefreeModulus mod(std::stoll(head));
        std::vector<i64> e;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) e.push_back(std::stoll(item));
        }
        return DirichletCharacter(mod, e);
    } catch (const std::logic_error& ex) {
        if (dynamic_cast<const DomainError*>(&ex)) throw;
        throw DomainError("bad character spec '" + spec + "'");
    }
}

std::string DirichletCharacter::spec() const {
    std::string s = std::to_string(mod_.value()) + ":";
    for (std::size_t i = 0; i < exps_.size(); ++i) s += (i ? "," : "") + std::to_string(exps_[i]);
    return s;
}

i64 DirichletCharacter::dlog_at(const PrimeData& pd, i64 a) const {
    a = mod_floor(a, pd.p);
    if (!pd.dlog.empty()) return pd.dlog[static_cast<std::size_t>(a)];
    return bsgs(a, pd.g, pd.p);
}

std::optional<i64> DirichletCharacter::angle_numerator(i64 a) const {
    if (std::gcd(a, mod_.value()) != 1) return std::nullopt;
    i64 acc = 0;
    const auto& data = *data_;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (exps_[i] == 0) continue;
        i64 pm1 = data[i].p - 1;
        i64 k = mul_mod(exps_[i], dlog_at(data[i], a), pm1);
        acc = mod_floor(acc + mul_mod(k, den_ / pm1, den_), den_);
    }
    return acc;
}

std::optional<Rational> DirichletCharacter::angle(i64 a) const {
    auto k = angle_numerator(a);
    if (!k) return std::nullopt;
    return Rational(*k, den_);
}

std::complex<double> DirichletCharacter::operator()(i64 a) const {
    auto k = angle_numerator(a);
    if (!k) return {0.0, 0.0};
    return e_ratio(*k, den_);
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<i64> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = -exps_[i];
    return DirichletCharacter(mod_, e);
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
    if (!(mod_ == o.mod_)) throw DomainError("character product needs equal moduli");
    std::vector<i64> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
    return DirichletCharacter(mod_, e);
}

bool DirichletCharacter::is_even() const {
    // chi_p(-1) = e(e_p (p-1)/2 / (p-1)) = (-1)^{e_p}
    i64 s = 0;
    for (i64 e : exps_) s += e;
    return s % 2 == 0;
}

bool DirichletCharacter::is_trivial() const {
    return std::all_of(exps_.begin(), exps_.end(), [](i64 e) { return e == 0; });
}

DirichletCharacter DirichletCharacter::restrict_to(i64 d) const {
    i64 m = 1;
    std::vector<i64> e;
    for (std::size_t i = 0; i < mod_.primes().size(); ++i) {
        i64 p = mod_.primes()[i];
        if (d % p == 0) {
            m *= p;
            e.push_back(exps_[i]);
        }
    }
    return DirichletCharacter(SquarefreeModulus(m), e);
}

}  // namespace supnorm
