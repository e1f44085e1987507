#include "supnorm/amplifier.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace supnorm {

HeckeSystem::HeckeSystem(DirichletCharacter chi, std::map<i64, double> prime_values)
    : chi_(std::move(chi)), primes_(std::move(prime_values)) {
    for (const auto& [p, v] : primes_) {
        if (!is_prime(static_cast<std::uint64_t>(p))) throw DomainError("HeckeSystem: " + std::to_string(p) + " is not prime");
        (void)v;
    }
}

HeckeSystem HeckeSystem::random(const DirichletCharacter& chi, i64 p_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::map<i64, double> vals;
    for (i64 p = 2; p <= p_max; ++p)
        if (is_prime(static_cast<std::uint64_t>(p))) vals[p] = 2 * std::cos(theta(rng));
    return HeckeSystem(chi, std::move(vals));
}

cplx HeckeSystem::prime_power(i64 p, int k) const {
    if (k == 0) return 1.0;
    auto it = primes_.find(p);
    if (it == primes_.end()) throw DomainError("HeckeSystem: no value for the prime " + std::to_string(p));
    auto key = std::make_pair(p, k);
    if (auto c = cache_.find(key); c != cache_.end()) return c->second;
    // lambda(p^{k+1}) = lambda(p) lambda(p^k) - chi(p) lambda(p^{k-1})
    cplx lp = it->second, chip = chi_(p);
    cplx prev = 1.0, cur = lp;
    for (int j = 1; j < k; ++j) {
        cplx next = lp * cur - chip * prev;
        prev = cur;
        cur = next;
    }
    cache_[key] = cur;
    return cur;
}

cplx HeckeSystem::operator()(i64 n) const {
    if (n < 1) throw DomainError("HeckeSystem: n must be positive");
    cplx v = 1.0;
    for (auto [p, e] : factorize(n)) v *= prime_power(p, e);
    return v;
}

namespace {

cplx square_coeff(const DirichletCharacter& chi, i64 p, SquareCoefficient rule) {
    return rule == SquareCoefficient::ConjChiP ? -std::conj(chi(p)) : -std::conj(chi(p * p));
}

Amplifier assemble(const HeckeSystem& sys, double L, const SquarefreeModulus& N, SquareCoefficient rule,
                   const std::vector<i64>& p1, const std::vector<i64>& p2, bool variant) {
    Amplifier a;
    a.L = L;
    a.N = N.value();
    a.is_variant = variant;
    a.square_rule = rule;
    a.chi_spec = sys.chi().spec();
    const auto& chi = sys.chi();
    for (i64 p : p1) {
        a.lambda1.push_back(p);
        a.terms.push_back({p, p, 1, sys(p) * std::conj(chi(p))});
    }
    for (i64 p : p2) {
        a.lambda2.push_back(p * p);
        a.terms.push_back({p * p, p, 2, square_coeff(chi, p, rule)});
    }
    return a;
}

}  // namespace

Amplifier build_amplifier(const HeckeSystem& sys, double L, const SquarefreeModulus& N, SquareCoefficient rule) {
    if (!(L >= 2)) throw DomainError("amplifier: need L >= 2");
    auto ps = primes_in_interval(L, 2 * L, N);
    return assemble(sys, L, N, rule, ps, ps, false);
}

Amplifier build_is_amplifier(const HeckeSystem& sys, double L, const SquarefreeModulus& N, SquareCoefficient rule) {
    if (!(L >= 4)) throw DomainError("IS amplifier: need L >= 4");
    auto ps = primes_in_interval(2, std::sqrt(L), N);
    return assemble(sys, L, N, rule, ps, ps, true);
}

cplx amplifier_diagonal_value(const HeckeSystem& sys, const Amplifier& amp) {
    if (amp.chi_spec != sys.chi().spec()) throw DomainError("amplifier was built for a different system");
    cplx s = 0;
    for (const auto& t : amp.terms) s += sys(t.ell) * t.coeff;
    return s;
}

namespace {

// group ring Q[C_m]
struct RingElem {
    std::vector<Rational> c;
    explicit RingElem(std::size_t m) : c(m) {}
    static RingElem unit(std::size_t m, i64 j, Rational v = 1) {
        RingElem r(m);
        r.c[static_cast<std::size_t>(mod_floor(j, static_cast<i64>(m)))] = v;
        return r;
    }
    RingElem operator*(const RingElem& o) const {
        const std::size_t m = c.size();
        RingElem r(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (o.c[j] != 0) r.c[(i + j) % m] += c[i] * o.c[j];
        }
        return r;
    }
    RingElem& operator+=(const RingElem& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    RingElem operator-() const {
        RingElem r(*this);
        for (auto& v : r.c) v = -v;
        return r;
    }
};

}  // namespace

std::vector<Rational> amplifier_diagonal_exact(const DirichletCharacter& chi, const std::map<i64, Rational>& prime_values,
                                               const Amplifier& amp) {
    if (amp.chi_spec != chi.spec()) throw DomainError("amplifier was built for a different character");
    const i64 m = chi.angle_denominator();
    const auto M = static_cast<std::size_t>(m);
    auto chi_elem = [&](i64 a) {
        auto k = chi.angle_numerator(a);
        return k ? RingElem::unit(M, *k) : RingElem(M);
    };
    auto conj_chi_elem = [&](i64 a) {
        auto k = chi.angle_numerator(a);
        return k ? RingElem::unit(M, -*k) : RingElem(M);
    };
    auto lambda = [&](i64 p, int k) {
        auto it = prime_values.find(p);
        if (it == prime_values.end()) throw DomainError("no exact value for the prime " + std::to_string(p));
        RingElem lp = RingElem::unit(M, 0, it->second);
        RingElem prev = RingElem::unit(M, 0), cur = lp;
        if (k == 0) return prev;
        for (int j = 1; j < k; ++j) {
            RingElem next = lp * cur;
            next += -(chi_elem(p) * prev);
            prev = cur;
            cur = next;
        }
        return cur;
    };
    RingElem total(M);
    for (const auto& t : amp.terms) {
        RingElem coeff(M);
        if (t.power == 1)
            coeff = lambda(t.prime, 1) * conj_chi_elem(t.prime);
        else
            coeff = -(amp.square_rule == SquareCoefficient::ConjChiP ? conj_chi_elem(t.prime)
                                                                       : conj_chi_elem(t.prime * t.prime));
        total += lambda(t.prime, t.power) * coeff;
    }
    return total.c;
}

}  // namespace supnorm
