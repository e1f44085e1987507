#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "supnorm/arithmetic.hpp"

namespace supnorm {

enum class Symbol { N, TStar, Z, L, H, Q };
std::string symbol_name(Symbol s);

// product of symbol powers with exact exponents; zero exponents never stored
class Monomial {
public:
    Monomial() = default;
    static Monomial of(Symbol s, const Rational& e = 1);

    Rational exponent(Symbol s) const;
    const std::map<Symbol, Rational>& exponents() const { return exps_; }
    void set(Symbol s, const Rational& e);

    Monomial operator*(const Monomial& o) const;
    Monomial pow(const Rational& r) const;
    Monomial inverse() const { return pow(-1); }
    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator<(const Monomial& o) const { return exps_ < o.exps_; }
    bool is_one() const { return exps_.empty(); }
    bool only_uses(const std::set<Symbol>& allowed) const;

    // replace each substituted symbol s^e by sub[s]^e
    Monomial substitute(const std::map<Symbol, Monomial>& sub) const;
    std::string str() const;

private:
    std::map<Symbol, Rational> exps_;
};

Monomial monomial_mul(const Monomial& a, const Monomial& b);

// sum of monomials, read as their max up to constants
struct ExponentBound {
    std::vector<Monomial> terms;
    bool up_to_eps = true;  // carries an unstated P^eps factor

    void add(const Monomial& m);
    ExponentBound substitute(const std::map<Symbol, Monomial>& sub) const;
    ExponentBound times(const Monomial& m) const;
    ExponentBound formal_sqrt() const;
    bool same_terms(const ExponentBound& o) const;
};

enum class Rel { LE, EQ, GE };

struct Relation {
    Monomial lhs;
    Rel op;
    Monomial rhs;
    std::string label;
};

// the feasible region in log-coordinates: t* = N^tau with tau in [0, tau_max]
struct ConstraintSet {
    Rational tau_max{1, 165};
    std::vector<Relation> relations;

    // evaluate a {N, t*}-monomial's log_N size at tau
    static Rational log_size(const Monomial& m, const Rational& tau);
    std::vector<Rational> corners() const { return {Rational(0), tau_max}; }
    // every relation holds at every corner after substitution
    bool satisfied(const std::map<Symbol, Monomial>& sub, std::vector<std::string>* failed = nullptr) const;
};

ConstraintSet parameter_constraints();

// term of maximal size over the corners; ties broken by canonical order
Monomial dominant_monomial(const ExponentBound& b, const ConstraintSet& c,
                           const std::map<Symbol, Monomial>& sub);

// equate terms[0] = terms[i] for all i, solve for the unknowns as {N, t*}-monomials
std::map<Symbol, Monomial> solve_balance(const std::vector<Monomial>& terms, const std::vector<Symbol>& unknowns,
                                         const std::map<Symbol, Monomial>& sub);

ExponentBound assemble_bound1(const Rational& theta);
ExponentBound assemble_bound2();
// off-diagonal and diagonal contributions, before the square root
ExponentBound lemma9_lemma11_assembly(const Rational& theta);
// formal square root times t*^4 L^-1 (the B = 3 step)
ExponentBound bound1_from_assembly(const Rational& theta);

// move the excess t*-power beyond target_t into N via t* <= N^tau_max
Monomial absorb_tstar(const Monomial& m, const Rational& target_t, const Rational& tau_max);

struct TraceLine {
    std::string step;
    std::string detail;
};

struct FinalExponentReport {
    Monomial H, L;
    Rational exponent_N, exponent_tstar;
    Monomial q0;
    Monomial second_term_raw;       // t*^{11181/1828} N^{71/914} q^{-1/2}
    Monomial second_term_absorbed;  // t*^{9979/1828} N^{6158/75405} q^{-1/2}
    bool ranges_ok = false;
    bool dominates_previous = false;  // -25/914 <= -1/37 and 9979/1828 <= 11/2
    std::vector<TraceLine> trace;
};

FinalExponentReport theorem1_final(const Rational& theta = ramanujan_theta());

struct HybridExponentReport {
    Rational weight_x, weight_y;
    Rational exponent_tstar, exponent_N;
};

// min(X, Y) <= X^w Y^{1-w} with X = t*^5 N^{-1/37}, Y = t*^{-1/12}, w making both exponents equal
HybridExponentReport theorem2_combination();

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

}  // namespace supnorm
