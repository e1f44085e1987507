#include "supnorm/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace supnorm {

namespace {

// integer range lo <= v < hi for a real half-open box edge
i64 ceil_i(double v) { return static_cast<i64>(std::ceil(v)); }
i64 floor_i(double v) { return static_cast<i64>(std::floor(v)); }

struct Box {
    i64 c_lo, c_hi;  // inclusive
    i64 s_max, r1_max, r2_max;
};

Box make_box(const CountingInstance& inst, double limit) {
    Box b;
    b.c_lo = ceil_i(inst.C);
    b.c_hi = ceil_i(2 * inst.C) - 1;
    b.s_max = floor_i(inst.S);
    b.r1_max = floor_i(inst.R);
    b.r2_max = floor_i(inst.R_tilde);
    double vol = double(b.c_hi - b.c_lo + 1) * double(2 * b.s_max + 1) * double(2 * b.r1_max + 1) *
                 double(2 * b.r2_max + 1);
    if (vol > limit) throw ResourceError("counting box volume " + std::to_string(vol) + " exceeds the limit");
    return b;
}

// u^2 d1 d2 c + u (d1 r2 + d2 r1) mod N, without the s term
i64 base_residue(const CountingInstance& inst, i64 c, i64 r1, i64 r2) {
    const i64 N = inst.N.value();
    i64 u = mod_floor(inst.u, N);
    i64 t = mul_mod(mul_mod(mul_mod(u, u, N), mod_floor(inst.d1 * inst.d2, N), N), mod_floor(c, N), N);
    i64 lin = mod_floor(mod_floor(inst.d1, N) * mod_floor(r2, N) % N + mod_floor(inst.d2, N) * mod_floor(r1, N) % N, N);
    return (t + mul_mod(u, lin, N)) % N;
}

}  // namespace

void CountingInstance::validate() const {
    // degenerate boxes (S = R = R_tilde = 0) are fine for enumeration; the bound itself needs >= 1
    if (C < 1 || S < 0 || R < 0 || R_tilde < 0) throw DomainError("counting: need C >= 1 and S, R, R_tilde >= 0");
    if (d1 < 1 || d2 < 1 || u < 1) throw DomainError("counting: d1, d2, u must be positive");
    if (approx) {
        const auto& ap = *approx;
        if (!(ap.H <= static_cast<double>(N.value()))) throw DomainError("counting: need H <= N");
        if (ap.x != Rational(u, N.value())) throw DomainError("counting: approximation is not of u/N");
        if (!ap.valid()) throw DomainError("counting: invalid rational approximation");
    }
}

bool divisibility_holds(const CountingInstance& inst, const Quad& x) {
    // plain big-integer arithmetic, independent of the modular helpers
    BigInt u = inst.u;
    BigInt v = u * u * inst.d1 * inst.d2 * x[0] + u * (BigInt(inst.d1) * x[3] + BigInt(inst.d2) * x[2]) + x[1];
    return v % inst.N.value() == 0;
}

std::vector<Quad> enumerate_A(const CountingInstance& inst, double box_limit) {
    inst.validate();
    const Box b = make_box(inst, box_limit);
    const i64 N = inst.N.value();
    std::vector<Quad> out;
    for (i64 c = b.c_lo; c <= b.c_hi; ++c) {
        // for fixed (c, r1, r2) the admissible s form one residue class mod N
        std::vector<std::array<i64, 3>> hits;  // (s, r1, r2)
        for (i64 r1 = -b.r1_max; r1 <= b.r1_max; ++r1)
            for (i64 r2 = -b.r2_max; r2 <= b.r2_max; ++r2) {
                i64 need = mod_floor(-base_residue(inst, c, r1, r2), N);
                // smallest s >= -s_max with s = need mod N
                i64 s = -b.s_max + mod_floor(need + b.s_max, N);
                for (; s <= b.s_max; s += N) hits.push_back({s, r1, r2});
            }
        std::sort(hits.begin(), hits.end());
        for (auto& h : hits) out.push_back({c, h[0], h[1], h[2]});
    }
    return out;
}

std::vector<Quad> enumerate_A_bruteforce(const CountingInstance& inst, double box_limit) {
    inst.validate();
    const Box b = make_box(inst, box_limit);
    std::vector<Quad> out;
    for (i64 s = -b.s_max; s <= b.s_max; ++s)
        for (i64 r2 = -b.r2_max; r2 <= b.r2_max; ++r2)
            for (i64 r1 = -b.r1_max; r1 <= b.r1_max; ++r1)
                for (i64 c = b.c_lo; c <= b.c_hi; ++c) {
                    Quad q{c, s, r1, r2};
                    if (divisibility_holds(inst, q)) out.push_back(q);
                }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Quad> enumerate_A_square(const CountingInstance& inst, double box_limit) {
    if (inst.d1 != 1 || inst.d2 != 1) throw DomainError("square count needs d1 = d2 = 1");
    std::vector<Quad> out;
    for (const auto& q : enumerate_A(inst, box_limit)) {
        i64 v = q[1] * q[0] - q[2] * q[3];
        if (v >= 0 && is_square(v)) out.push_back(q);
    }
    return out;
}

double lemma10_plain_rhs(const CountingInstance& inst) {
    if (!inst.approx) throw DomainError("counting bound needs a rational approximation of u/N");
    const double q = static_cast<double>(inst.approx->q), H = inst.approx->H, N = static_cast<double>(inst.N.value());
    const double D = inst.d1 * inst.R_tilde + inst.d2 * inst.R;
    return inst.C * std::min(inst.R, inst.R_tilde) * (inst.S * D / N + inst.S * q / N + D * D / (q * H) + D / q + 1);
}

double lemma10_square_rhs(const CountingInstance& inst) {
    if (!inst.approx) throw DomainError("counting bound needs a rational approximation of u/N");
    const double q = static_cast<double>(inst.approx->q), H = inst.approx->H, N = static_cast<double>(inst.N.value());
    const double C = inst.C, S = inst.S, Rs = inst.R + inst.R_tilde;
    return C * S * Rs / N + C * S * q / N + C * Rs * Rs / (q * H) + C * Rs / q + C +
           std::sqrt(S * C) * q * std::min(inst.R, inst.R_tilde) / N;
}

BoundCheck lemma10_bound_check(const CountingInstance& inst, CountKind kind, double box_limit) {
    if (inst.S < 1 || inst.R < 1 || inst.R_tilde < 1) throw DomainError("counting bound: S, R, R_tilde must be >= 1");
    BoundCheck r;
    if (kind == CountKind::Plain) {
        r.count = enumerate_A(inst, box_limit).size();
        r.bound_value = lemma10_plain_rhs(inst);
    } else {
        r.count = enumerate_A_square(inst, box_limit).size();
        r.bound_value = lemma10_square_rhs(inst);
    }
    r.ratio = static_cast<double>(r.count) / r.bound_value;
    return r;
}

AdmissibleReport count_admissible_a(const CongruenceInstance& inst, double box_limit) {
    const i64 N = inst.N.value();
    if (std::gcd(inst.l1 * inst.l2, N) != 1) throw DomainError("congruence reduction: need gcd(l1 l2, N) = 1");
    if (inst.c < 1 || inst.l1 < 1 || inst.l2 < 1 || inst.d1 < 1 || inst.d2 < 1)
        throw DomainError("congruence reduction: parameters must be positive");
    const i64 M = N * inst.c;
    if (static_cast<double>(M) > box_limit) throw ResourceError("congruence reduction: modulus exceeds the limit");
    auto centered = [M](i64 v) {
        i64 r = mod_floor(v, M);
        return r > M / 2 ? r - M : r;
    };
    AdmissibleReport rep;
    rep.gcd_bound = std::gcd(inst.c, std::gcd(inst.l1, inst.l2));
    std::map<std::pair<i64, i64>, std::size_t> mult_all;
    std::map<std::pair<i64, i64>, std::size_t> admissible;
    const i64 duc1 = inst.d1 * inst.u * inst.c, duc2 = inst.d2 * inst.u * inst.c;
    for (i64 a = 0; a < M; ++a) {
        if (std::gcd(a, M) != 1) continue;
        ++rep.units_checked;
        i64 abar = mod_inverse(a, M);
        i64 r1 = centered(mul_mod(mod_floor(inst.l1, M), abar, M) - duc1);
        i64 r2 = centered(-mul_mod(mod_floor(inst.l2, M), a, M) - duc2);
        ++mult_all[{r1, r2}];
        if (std::fabs(double(r1)) > inst.R1 || std::fabs(double(r2)) > inst.R2) continue;
        ++rep.num_a;
        ++admissible[{r1, r2}];
        // (d1 u c + r1)(d2 u c + r2) + l1 l2 = 0 mod Nc, in big integers
        BigInt lhs = (BigInt(duc1) + r1) * (BigInt(duc2) + r2) + BigInt(inst.l1) * inst.l2;
        if (lhs % M != 0) {
            ++rep.cong_violations;
            continue;
        }
        BigInt num = BigInt(r1) * r2 + BigInt(inst.l1) * inst.l2;
        if (num % inst.c != 0) {
            ++rep.cong_violations;
            continue;
        }
        BigInt s = num / inst.c;
        if (s == 0) continue;  // v_p(0) is infinite
        for (auto [p, e] : factorize(inst.c)) {
            int vs = 0;
            BigInt t = s < 0 ? BigInt(-s) : s;
            while (t % p == 0) {
                t /= p;
                ++vs;
            }
            int v1 = p_adic_valuation(inst.l1, p), v2 = p_adic_valuation(inst.l2, p);
            int need = std::min({v1 + v2 - e, v1, v2, e});
            if (vs < need) ++rep.vps_violations;
        }
    }
    rep.num_rs_pairs = admissible.size();
    for (const auto& [k, m] : mult_all) rep.max_multiplicity = std::max(rep.max_multiplicity, m);
    return rep;
}

// ---- matrices

double point_pair_u(double x, double y, const Matrix2& g) {
    // u = |z - gz|^2 / (4 y Im gz), Im gz = n y / |cz + d|^2
    using ld = long double;
    const ld X = x, Y = y;
    const ld a = g.a, b = g.b, c = g.c, d = g.d;
    const ld n = a * d - b * c;
    // z - gz = ((cz + d) z - (az + b)) / (cz + d)
    const ld re_w = c * X + d, im_w = c * Y;
    const ld re_num = re_w * X - im_w * Y - (a * X + b);
    const ld im_num = re_w * Y + im_w * X - a * Y;
    const ld num = re_num * re_num + im_num * im_num;  // |z - gz|^2 |cz + d|^2
    return static_cast<double>(num / (4 * Y * Y * n));
}

namespace {

void check_matrix_instance(const MatrixInstance& inst) {
    if (!(inst.y > 0)) throw DomainError("matrix count: need y > 0");
    if (inst.n < 1) throw DomainError("matrix count: need n >= 1");
    if (std::gcd(inst.n, inst.N.value()) != 1) throw DomainError("matrix count: need gcd(n, N) = 1");
    if (!(inst.delta >= 0)) throw DomainError("matrix count: need delta >= 0");
    if (inst.delta > kDeltaCap) throw ResourceError("matrix count: delta above the cap");
}

// conjugating g / sqrt n to the stabiliser frame of z gives
//   c' = c y / sqrt n, a' - d' = (a - d - 2 c x) / sqrt n, a' + d' = (a + d) / sqrt n,
// with a'^2 + b'^2 + c'^2 + d'^2 = 4u + 2; this bounds every entry
struct EntryBounds {
    double c_max, trace_max, diff_radius, b_radius;
};

EntryBounds entry_bounds(const MatrixInstance& inst) {
    const double n = double(inst.n), dl = inst.delta, slack = 1e-9;
    EntryBounds e;
    e.c_max = std::sqrt(n) * (std::sqrt(1 + dl) + std::sqrt(dl)) / inst.y * (1 + slack) + slack;
    e.trace_max = 2 * std::sqrt(n * (1 + dl)) * (1 + slack) + slack;
    e.diff_radius = 2 * std::sqrt(n * dl) * (1 + slack) + slack;
    e.b_radius = 2 * inst.y * std::sqrt(n * dl) * (1 + slack) + slack;
    return e;
}

}  // namespace

double matrix_entry_bound(const MatrixInstance& inst) {
    check_matrix_instance(inst);
    const EntryBounds e = entry_bounds(inst);
    const double ax = std::fabs(inst.x);
    const double ad = 0.5 * (e.trace_max + e.diff_radius + 2 * e.c_max * ax);  // |a|, |d|
    // b = y sqrt(n) b' - a x + x (c x + d) with b'^2 <= 4 delta + 2
    const double b = inst.y * std::sqrt(double(inst.n) * (4 * inst.delta + 2)) + ax * (2 * ad + e.c_max * ax);
    return std::max({e.c_max, ad, b});
}

std::vector<Matrix2> enumerate_R_N_matrices(const MatrixInstance& inst, double box_limit) {
    check_matrix_instance(inst);
    const EntryBounds e = entry_bounds(inst);
    const i64 N = inst.N.value(), n = inst.n;
    const i64 c_top = floor_i(e.c_max);
    const i64 tr = floor_i(e.trace_max);
    double work = double(c_top / N + 1) * double(2 * tr + 1) * (2 * e.diff_radius + 2);
    if (work > box_limit) throw ResourceError("matrix enumeration box exceeds the limit");
    std::vector<Matrix2> out;
    auto keep = [&](const Matrix2& g) {
        if (point_pair_u(inst.x, inst.y, g) < inst.delta) out.push_back(g);
    };
    // c = 0: a d = n with a > 0, |(a - d) x + b| < 2 y sqrt(n delta)
    for (i64 a : divisors(n)) {
        const i64 d = n / a;
        const double centre = -double(a - d) * inst.x;
        for (i64 b = ceil_i(centre - e.b_radius); b <= floor_i(centre + e.b_radius); ++b) keep({a, b, 0, d});
    }
    for (i64 c = N; c <= c_top; c += N) {
        for (i64 s = -tr; s <= tr; ++s) {
            const double centre = 2.0 * c * inst.x;
            for (i64 t = ceil_i(centre - e.diff_radius); t <= floor_i(centre + e.diff_radius); ++t) {
                if (((s - t) & 1) != 0) continue;
                const i64 a = (s + t) / 2, d = (s - t) / 2;
                const i64 num = a * d - n;
                if (num % c != 0) continue;
                keep({a, num / c, c, d});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Matrix2> enumerate_matrices_naive(const MatrixInstance& inst, i64 E) {
    check_matrix_instance(inst);
    const i64 N = inst.N.value();
    std::vector<Matrix2> out;
    for (i64 c = 0; c <= E; ++c) {
        if (c % N != 0) continue;
        for (i64 a = -E; a <= E; ++a)
            for (i64 d = -E; d <= E; ++d) {
                if (c == 0) {
                    if (a <= 0 || a * d != inst.n) continue;
                    for (i64 b = -E; b <= E; ++b) {
                        Matrix2 g{a, b, 0, d};
                        if (point_pair_u(inst.x, inst.y, g) < inst.delta) out.push_back(g);
                    }
                    continue;
                }
                const i64 num = a * d - inst.n;
                if (num % c != 0) continue;
                const i64 b = num / c;
                if (b < -E || b > E) continue;
                Matrix2 g{a, b, c, d};
                if (point_pair_u(inst.x, inst.y, g) < inst.delta) out.push_back(g);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

MatrixSplit matrix_count_split(const MatrixInstance& inst) {
    MatrixSplit s;
    for (const auto& g : enumerate_R_N_matrices(inst)) {
        if (g.c == 0)
            ++s.M0;
        else
            ++s.Mstar;
    }
    s.M = s.M0 + s.Mstar;
    return s;
}

double kernel_majorant(double u, double T, i64 n) {
    const double nn = double(n);
    if (u <= 1.0 / (nn * nn * nn * nn)) return T;
    return 4 * std::sqrt(T) * std::pow(u, -0.25) * std::pow(u + 1, -1.25);
}

double geometric_sum(const MatrixInstance& inst, double T, double delta_max) {
    MatrixInstance big = inst;
    big.delta = delta_max;
    double s = 0;
    for (const auto& g : enumerate_R_N_matrices(big)) s += kernel_majorant(point_pair_u(inst.x, inst.y, g), T, inst.n);
    return s;
}

double geometric_shape(double T, i64 n, double y) {
    return T + std::sqrt(T) * double(n) + std::sqrt(T) * std::sqrt(double(n)) * y;
}

double m0_shape(i64 n, double delta, double y) {
    return std::pow(double(n), 0.1) * (1 + std::sqrt(double(n) * delta) * y);
}

}  // namespace supnorm
