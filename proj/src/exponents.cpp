#include "supnorm/exponents.hpp"

#include <algorithm>

namespace supnorm {

std::string symbol_name(Symbol s) {
    switch (s) {
        case Symbol::N: return "N";
        case Symbol::TStar: return "t*";
        case Symbol::Z: return "Z";
        case Symbol::L: return "L";
        case Symbol::H: return "H";
        case Symbol::Q: return "q";
    }
    return "?";
}

std::string rational_str(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw DomainError("zero denominator in '" + s + "'");
        return Rational(BigInt(s.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw DomainError("not a rational: '" + s + "'");
    }
}

Monomial Monomial::of(Symbol s, const Rational& e) {
    Monomial m;
    m.set(s, e);
    return m;
}

Rational Monomial::exponent(Symbol s) const {
    auto it = exps_.find(s);
    return it == exps_.end() ? Rational(0) : it->second;
}

void Monomial::set(Symbol s, const Rational& e) {
    if (e == 0)
        exps_.erase(s);
    else
        exps_[s] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [s, e] : o.exps_) r.set(s, r.exponent(s) + e);
    return r;
}

Monomial Monomial::pow(const Rational& p) const {
    Monomial r;
    for (const auto& [s, e] : exps_) r.set(s, e * p);
    return r;
}

bool Monomial::only_uses(const std::set<Symbol>& allowed) const {
    return std::all_of(exps_.begin(), exps_.end(), [&](const auto& kv) { return allowed.count(kv.first) > 0; });
}

Monomial Monomial::substitute(const std::map<Symbol, Monomial>& sub) const {
    Monomial r;
    for (const auto& [s, e] : exps_) {
        auto it = sub.find(s);
        r = r * (it == sub.end() ? Monomial::of(s, e) : it->second.pow(e));
    }
    return r;
}

std::string Monomial::str() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (const auto& [s, e] : exps_) {
        if (!out.empty()) out += " ";
        out += symbol_name(s);
        if (e != 1) out += "^(" + rational_str(e) + ")";
    }
    return out;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) { return a * b; }

void ExponentBound::add(const Monomial& m) {
    if (std::find(terms.begin(), terms.end(), m) == terms.end()) terms.push_back(m);
}

ExponentBound ExponentBound::substitute(const std::map<Symbol, Monomial>& sub) const {
    ExponentBound r;
    r.up_to_eps = up_to_eps;
    for (const auto& t : terms) r.add(t.substitute(sub));
    return r;
}

ExponentBound ExponentBound::times(const Monomial& m) const {
    ExponentBound r;
    r.up_to_eps = up_to_eps;
    for (const auto& t : terms) r.add(t * m);
    return r;
}

ExponentBound ExponentBound::formal_sqrt() const {
    ExponentBound r;
    r.up_to_eps = up_to_eps;
    for (const auto& t : terms) r.add(t.pow(Rational(1, 2)));
    return r;
}

bool ExponentBound::same_terms(const ExponentBound& o) const {
    auto a = terms, b = o.terms;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Rational ConstraintSet::log_size(const Monomial& m, const Rational& tau) {
    if (!m.only_uses({Symbol::N, Symbol::TStar}))
        throw DomainError("monomial still contains symbols other than N, t*: " + m.str());
    return m.exponent(Symbol::N) + tau * m.exponent(Symbol::TStar);
}

bool ConstraintSet::satisfied(const std::map<Symbol, Monomial>& sub, std::vector<std::string>* failed) const {
    bool ok = true;
    for (const auto& r : relations) {
        Monomial diff = r.lhs.substitute(sub) * r.rhs.substitute(sub).inverse();
        for (const auto& tau : corners()) {
            Rational v = log_size(diff, tau);
            bool holds = r.op == Rel::LE ? v <= 0 : r.op == Rel::GE ? v >= 0 : v == 0;
            if (!holds) {
                ok = false;
                if (failed) failed->push_back(r.label + " at tau=" + rational_str(tau));
            }
        }
    }
    return ok;
}

ConstraintSet parameter_constraints() {
    using S = Symbol;
    ConstraintSet c;
    auto N = [](Rational e) { return Monomial::of(S::N, e); };
    auto t = Monomial::of(S::TStar);
    auto L = Monomial::of(S::L), H = Monomial::of(S::H);
    c.relations.push_back({L, Rel::GE, N(Rational(1, 100)), "L >= N^(1/100)"});
    c.relations.push_back({L, Rel::GE, t.pow(3), "L >= t*^3"});
    c.relations.push_back({L, Rel::LE, N(1), "L <= N"});
    c.relations.push_back({H, Rel::GE, t * L.pow(2), "H >= t* L^2"});
    c.relations.push_back({H, Rel::LE, N(1), "H <= N"});
    return c;
}

Monomial dominant_monomial(const ExponentBound& b, const ConstraintSet& c, const std::map<Symbol, Monomial>& sub) {
    if (b.terms.empty()) throw DomainError("empty bound");
    std::vector<Monomial> red;
    for (const auto& t : b.terms) red.push_back(t.substitute(sub));
    auto corners = c.corners();
    // prefer a term that is largest at every corner; otherwise largest at the last corner
    std::vector<std::size_t> order(red.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return red[x] < red[y]; });
    for (std::size_t i : order) {
        bool dom = true;
        for (std::size_t j = 0; j < red.size() && dom; ++j)
            for (const auto& tau : corners)
                if (ConstraintSet::log_size(red[j], tau) > ConstraintSet::log_size(red[i], tau)) dom = false;
        if (dom) return red[i];
    }
    std::size_t best = order.front();
    for (std::size_t i : order)
        if (ConstraintSet::log_size(red[i], corners.back()) > ConstraintSet::log_size(red[best], corners.back()))
            best = i;
    return red[best];
}

namespace {

// exact Gauss-Jordan; throws on singular or inconsistent systems
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
    const std::size_t n = a.size();
    if (n == 0 || a[0].size() != n) throw DomainError("solve_balance: system is not square (under- or overdetermined)");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw DomainError("solve_balance: singular system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

}  // namespace

std::map<Symbol, Monomial> solve_balance(const std::vector<Monomial>& terms, const std::vector<Symbol>& unknowns,
                                         const std::map<Symbol, Monomial>& sub) {
    if (terms.size() < 2) throw DomainError("solve_balance: need at least two terms");
    std::vector<Monomial> red;
    std::set<Symbol> allowed{Symbol::N, Symbol::TStar};
    for (Symbol u : unknowns) allowed.insert(u);
    for (const auto& t : terms) {
        red.push_back(t.substitute(sub));
        if (!red.back().only_uses(allowed)) throw DomainError("solve_balance: unreduced symbol in " + red.back().str());
    }
    const Symbol coords[2] = {Symbol::N, Symbol::TStar};
    const std::size_t k = unknowns.size();
    // variable (j, c) sits at index 2j + c
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (std::size_t i = 1; i < red.size(); ++i) {
        for (int c = 0; c < 2; ++c) {
            std::vector<Rational> row(2 * k);
            for (std::size_t j = 0; j < k; ++j)
                row[2 * j + c] = red[0].exponent(unknowns[j]) - red[i].exponent(unknowns[j]);
            a.push_back(row);
            rhs.push_back(red[i].exponent(coords[c]) - red[0].exponent(coords[c]));
        }
    }
    auto x = solve_linear(a, rhs);
    std::map<Symbol, Monomial> out;
    for (std::size_t j = 0; j < k; ++j) {
        Monomial m;
        m.set(Symbol::N, x[2 * j]);
        m.set(Symbol::TStar, x[2 * j + 1]);
        out[unknowns[j]] = m;
    }
    return out;
}

namespace {
using S = Symbol;
Monomial mono(std::initializer_list<std::pair<S, Rational>> kv) {
    Monomial m;
    for (const auto& [s, e] : kv) m.set(s, m.exponent(s) + e);
    return m;
}
Rational R(long a, long b = 1) { return Rational(a, b); }
}  // namespace

ExponentBound assemble_bound1(const Rational& theta) {
    ExponentBound b;
    Monomial pre = mono({{S::TStar, R(5)}, {S::L, theta / 2}});
    b.add(pre * mono({{S::TStar, R(1)}, {S::Z, R(1, 4)}, {S::L, R(7, 8)}, {S::H, R(1, 2)}, {S::N, R(-3, 4)}}));
    b.add(pre * mono({{S::TStar, R(1, 2)}, {S::L, R(1, 2)}, {S::Z, R(1, 2)}, {S::Q, R(-1, 2)}, {S::N, R(-1, 2)}}));
    b.add(pre * mono({{S::Z, R(1, 2)}, {S::L, R(-1, 4)}, {S::N, R(-1, 2)}}));
    b.add(mono({{S::TStar, R(9, 2)}, {S::L, R(-1, 2)}}));
    return b;
}

ExponentBound assemble_bound2() {
    ExponentBound b;
    Monomial pre = mono({{S::TStar, R(3, 2)}});
    b.add(pre * mono({{S::Q, R(1)}, {S::Z, R(1)}, {S::N, R(-3, 2)}}));
    b.add(pre * mono({{S::Z, R(1)}, {S::H, R(-3, 2)}}));
    b.add(pre * mono({{S::TStar, R(3, 2)}, {S::Q, R(1)}, {S::Z, R(-1, 2)}}));
    return b;
}

ExponentBound lemma9_lemma11_assembly(const Rational& theta) {
    ExponentBound b;
    Monomial pre = mono({{S::TStar, R(2)}, {S::L, theta}});
    b.add(pre * mono({{S::TStar, R(2)}, {S::Z, R(1, 2)}, {S::L, R(15, 4)}, {S::H, R(1)}, {S::N, R(-3, 2)}}));
    b.add(pre * mono({{S::TStar, R(1)}, {S::L, R(3)}, {S::Z, R(1)}, {S::Q, R(-1)}, {S::N, R(-1)}}));
    b.add(pre * mono({{S::Z, R(1)}, {S::L, R(3, 2)}, {S::N, R(-1)}}));
    b.add(mono({{S::TStar, R(1)}, {S::L, R(1)}}));  // diagonal
    return b;
}

ExponentBound bound1_from_assembly(const Rational& theta) {
    return lemma9_lemma11_assembly(theta).formal_sqrt().times(mono({{S::TStar, R(4)}, {S::L, R(-1)}}));
}

Monomial absorb_tstar(const Monomial& m, const Rational& target_t, const Rational& tau_max) {
    Rational excess = m.exponent(S::TStar) - target_t;
    Monomial r = m;
    if (excess > 0) {
        r.set(S::TStar, target_t);
        r.set(S::N, m.exponent(S::N) + excess * tau_max);
    }
    return r;
}

FinalExponentReport theorem1_final(const Rational& theta) {
    FinalExponentReport rep;
    auto b1 = assemble_bound1(theta);
    auto b2 = assemble_bound2();
    const Monomial tN = mono({{S::TStar, R(1)}, {S::N, R(1)}});

    // critical terms: first and third of bound1, second of bound2
    auto hl = solve_balance({b1.terms[0], b1.terms[2], b2.terms[1]}, {S::H, S::L}, {{S::Z, tN}});
    rep.H = hl.at(S::H);
    rep.L = hl.at(S::L);
    rep.trace.push_back({"balance", "H = " + rep.H.str() + ", L = " + rep.L.str()});

    ConstraintSet cs = parameter_constraints();
    std::vector<std::string> failed;
    rep.ranges_ok = cs.satisfied(hl, &failed);
    rep.trace.push_back({"ranges", rep.ranges_ok ? "L and H ranges hold at all corners" : "violated"});
    for (const auto& f : failed) rep.trace.push_back({"range-failure", f});

    rep.q0 = mono({{S::N, R(1, 3)}});
    const std::vector<Monomial> zs{mono({{S::N, R(9, 10)}}), tN};

    // each regime: bound, q corners
    struct Regime {
        const ExponentBound* b;
        std::vector<Monomial> qs;
        const char* name;
    };
    std::vector<Regime> regimes{{&b1, {rep.q0, rep.H}, "q >= q0 (bound1)"}, {&b2, {Monomial(), rep.q0}, "q < q0 (bound2)"}};

    ExponentBound all;
    all.up_to_eps = true;
    for (const auto& rg : regimes) {
        for (const auto& term : rg.b->terms) {
            for (const auto& z : zs) {
                for (const auto& q : rg.qs) {
                    auto sub = hl;
                    sub[S::Z] = z;
                    sub[S::Q] = q;
                    Monomial m = term.substitute(sub);
                    all.add(m);
                    rep.trace.push_back({rg.name, term.str() + "  ->  " + m.str()});
                }
            }
        }
    }
    Monomial fin = dominant_monomial(all, cs, {});
    // the winner must dominate every candidate at both corners
    for (const auto& m : all.terms)
        for (const auto& tau : cs.corners())
            if (ConstraintSet::log_size(m, tau) > ConstraintSet::log_size(fin, tau))
                throw DomainError("theorem1_final: no uniformly dominant term");
    rep.exponent_N = fin.exponent(S::N);
    rep.exponent_tstar = fin.exponent(S::TStar);
    rep.trace.push_back({"final", fin.str()});

    auto sub = hl;
    sub[S::Z] = tN;
    rep.second_term_raw = b1.terms[1].substitute(sub);
    rep.second_term_absorbed = absorb_tstar(rep.second_term_raw, rep.exponent_tstar, cs.tau_max);
    rep.trace.push_back({"second term", rep.second_term_raw.str() + "  <=  " + rep.second_term_absorbed.str()});

    rep.dominates_previous = rep.exponent_N <= R(-1, 37) && rep.exponent_tstar <= R(11, 2);
    return rep;
}

HybridExponentReport theorem2_combination() {
    // X = t*^a N^b, Y = t*^c: want w a + (1-w) c = w b
    const Rational a = 5, b = R(-1, 37), c = R(-1, 12);
    Rational w = -c / (a - c - b);
    HybridExponentReport r;
    r.weight_x = w;
    r.weight_y = 1 - w;
    r.exponent_tstar = w * a + (1 - w) * c;
    r.exponent_N = w * b;
    return r;
}

}  // namespace supnorm
