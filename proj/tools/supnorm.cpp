#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "supnorm/amplifier.hpp"
#include "supnorm/config.hpp"
#include "supnorm/counting.hpp"
#include "supnorm/exponents.hpp"
#include "supnorm/kloosterman.hpp"
#include "supnorm/oscillatory.hpp"
#include "supnorm/special_functions.hpp"
#include "supnorm/transforms.hpp"
#include "supnorm/verify.hpp"

using namespace supnorm;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kCap = 3 };

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

ArchimedeanParameter parameter(const std::string& kind, int k, double t) {
    if (kind == "holo" || kind == "holomorphic") return ArchimedeanParameter::holomorphic(k);
    if (kind == "maass") return ArchimedeanParameter::maass(t);
    throw std::invalid_argument("--kind must be holo or maass");
}

std::string quad_str(const Quad& q) {
    return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + "," +
           std::to_string(q[3]) + ")";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supnorm: kernels, exponential sums, counting and exponent checks for sup-norm bounds"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    // global run configuration; flags override the file
    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::optional<std::string> format_flag, output_flag;
    std::optional<double> box_flag, budget_flag;
    app.add_option("--config", config_path, std::string("key = value config file (default: $") + kConfigEnv + ")");
    app.add_option("--seed", seed_flag, "random seed");
    app.add_option("--format", format_flag, "report format: json or csv");
    app.add_option("--output", output_flag, "report path (default stdout)");
    app.add_option("--box-limit", box_flag, "enumeration cap");
    app.add_option("--time-budget", budget_flag, "seconds for verify");

    // kloosterman
    auto* kl = app.add_subcommand("kloosterman", "twisted Kloosterman sum");
    i64 km = 1, kn = 1, kc = 1;
    std::string kchar = "trivial";
    kl->add_option("--m", km)->required();
    kl->add_option("--n", kn)->required();
    kl->add_option("--c", kc)->required();
    kl->add_option("--char", kchar, "trivial, trivial:N, real:N or N:k1,k2,... (one exponent per prime)");

    // bessel
    auto* bs = app.add_subcommand("bessel", "Bessel functions and kernels");
    std::string bfn = "J", bkind = "maass";
    double border = 0, bt = 0, by = 1;
    int bk = 2, bsign = 1;
    bs->add_option("--fn", bfn, "J, Kimag, Ypair, W or kernel");
    bs->add_option("--order", border, "order for J");
    bs->add_option("--t", bt, "spectral parameter");
    bs->add_option("--y", by, "argument");
    bs->add_option("--kind", bkind, "holo or maass (W, kernel)");
    bs->add_option("--k", bk, "weight (holo)");
    bs->add_option("--sign", bsign, "kernel sign, 1 or -1");
    auto* bverify = bs->add_subcommand("verify", "run the special-function property grid, CSV out");

    // transform
    auto* tr = app.add_subcommand("transform", "Bessel transforms of the test function");
    int tA = 8, tB = 2;
    std::optional<int> tk;
    std::optional<double> tt;
    std::string tmethod = "both";
    tr->add_option("--A", tA);
    tr->add_option("--B", tB);
    auto* tk_opt = tr->add_option("--k", tk, "weight for the dot transform");
    auto* tt_opt = tr->add_option("--t", tt, "spectral parameter for the tilde transform");
    tk_opt->excludes(tt_opt);
    tr->add_option("--method", tmethod)->check(CLI::IsMember({"closed", "quad", "both"}));

    // approx
    auto* ap = app.add_subcommand("approx", "Dirichlet approximation a/q of x with q <= H");
    std::string ax = "0";
    double aH = 1;
    ap->add_option("--x", ax, "a/b, decimal or golden")->required();
    ap->add_option("--H", aH)->required();

    // decay
    auto* dc = app.add_subcommand("decay", "Poisson decay of a windowed exponential sum");
    double dZ = 256, dT = 16;
    std::string dalpha = "1/2", dshape = "plateau";
    int dj = 2;
    dc->add_option("--Z", dZ);
    dc->add_option("--T", dT);
    dc->add_option("--alpha", dalpha, "a/b, decimal or golden");
    dc->add_option("--j", dj);
    dc->add_option("--shape", dshape, "plateau or bump");

    // vintegral
    auto* vi = app.add_subcommand("vintegral", "window integrated against the Voronoi kernel");
    std::string vkind = "maass";
    double vt = 0, vZ = 128, vT = 8, valpha = 1;
    int vk = 2, vsign = 1;
    vi->add_option("--kind", vkind, "holo or maass");
    vi->add_option("--t", vt);
    vi->add_option("--k", vk);
    vi->add_option("--sign", vsign);
    vi->add_option("--Z", vZ);
    vi->add_option("--T", vT);
    vi->add_option("--alpha", valpha);

    // count
    auto* ct = app.add_subcommand("count", "lattice point counts with brute-force oracles");
    ct->require_subcommand(1);
    CountingInstance ci;
    std::optional<double> cH;
    bool emit = false, oracle = false;
    i64 cN = 1;
    auto add_box = [&](CLI::App* s) {
        s->add_option("--C", ci.C);
        s->add_option("--S", ci.S);
        s->add_option("--R", ci.R);
        s->add_option("--Rt", ci.R_tilde, "second r-range");
        s->add_option("--d1", ci.d1);
        s->add_option("--d2", ci.d2);
        s->add_option("--u", ci.u);
        s->add_option("--N", cN);
        s->add_option("--H", cH, "Dirichlet parameter for u/N (default N)");
        s->add_flag("--emit-elements", emit);
        s->add_flag("--oracle", oracle, "also run the independent enumerator");
    };
    auto* cA = ct->add_subcommand("A", "congruence box");
    auto* cAsq = ct->add_subcommand("Asq", "congruence box with the square condition");
    add_box(cA);
    add_box(cAsq);
    auto* cM = ct->add_subcommand("matrices", "integral matrices near a point");
    MatrixInstance mi;
    i64 mN = 1;
    cM->add_option("--x", mi.x);
    cM->add_option("--y", mi.y);
    cM->add_option("--n", mi.n);
    cM->add_option("--N", mN);
    cM->add_option("--delta", mi.delta);
    cM->add_flag("--emit-elements", emit);
    auto* cR = ct->add_subcommand("reduce", "admissible residues of the congruence reduction");
    CongruenceInstance cg;
    i64 gN = 1;
    cR->add_option("--l1", cg.l1);
    cR->add_option("--l2", cg.l2);
    cR->add_option("--d1", cg.d1);
    cR->add_option("--d2", cg.d2);
    cR->add_option("--c", cg.c);
    cR->add_option("--u", cg.u);
    cR->add_option("--N", gN);
    cR->add_option("--R1", cg.R1);
    cR->add_option("--R2", cg.R2);

    // amplifier
    auto* am = app.add_subcommand("amplifier", "amplifier on a random Hecke system");
    double aL = 20;
    i64 aN = 1;
    std::optional<std::uint64_t> aseed;
    bool ais = false, aliteral = false;
    std::string achar;
    am->add_option("--L", aL);
    am->add_option("--N", aN);
    am->add_option("--seed", aseed);
    am->add_option("--char", achar, "character (default trivial mod N)");
    am->add_flag("--is-variant", ais, "primes up to sqrt L and their squares");
    am->add_flag("--literal-square", aliteral, "use -conj chi(p^2) at p^2");

    // optimize
    auto* op = app.add_subcommand("optimize", "exact exponent optimisation");
    std::string otheta = "7/64";
    bool otrace = false;
    op->add_option("--theta", otheta);
    op->add_flag("--emit-trace", otrace);
    auto* ot2 = op->add_subcommand("theorem2", "hybrid combination of the two bounds");

    // verify
    auto* vf = app.add_subcommand("verify", "run the property suites");
    std::string selector = "*";
    bool list = false;
    vf->add_option("--selector", selector, "glob over property ids");
    vf->add_flag("--list", list, "list property ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg;
        if (config_path.empty())
            if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
        if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (format_flag) cfg.format = *format_flag;
        if (output_flag) cfg.output = *output_flag;
        if (box_flag) cfg.box_limit = *box_flag;
        if (budget_flag) cfg.time_budget = *budget_flag;
        cfg.validate();

        if (*kl) {
            KloostermanQuery q{km, kn, kc, DirichletCharacter::parse(kchar)};
            auto w = kloosterman_weil_check(q);
            print(json{{"m", km}, {"n", kn}, {"c", kc}, {"char", q.chi.spec()}, {"re", w.value.real()},
                       {"im", w.value.imag()}, {"abs", w.abs}, {"weil_bound", w.bound}, {"weil_ratio", w.ratio}});
            return kOk;
        }

        if (*bs) {
            if (*bverify) {
                auto rep = run_verify(cfg, "special-functions/*");
                std::cout << "property,C0,limit,passed,detail\n";
                for (const auto& p : rep.properties)
                    std::cout << p.id << ',' << p.fitted_constant << ',' << p.limit << ',' << (p.passed ? 1 : 0) << ",\""
                              << p.detail << "\"\n";
                return rep.passed() ? kOk : (rep.resource_cap_hit() ? kCap : kFail);
            }
            json j{{"fn", bfn}, {"y", by}};
            if (bfn == "J") {
                j["order"] = border;
                j["value"] = bessel_j(border, by);
            } else if (bfn == "Kimag") {
                auto d = bessel_k_imag_detail(bt, by);
                j["t"] = bt;
                j["value"] = d.value;
                j["est_rel_error"] = d.est_rel_error;
                j["digits"] = d.digits;
                j["method"] = d.method;
            } else if (bfn == "Ypair") {
                j["t"] = bt;
                j["value"] = bessel_y_imag_pair(bt, by);
            } else if (bfn == "W" || bfn == "kernel") {
                auto p = parameter(bkind, bk, bt);
                j["parameter"] = p.describe();
                if (bfn == "W") {
                    j["value"] = whittaker_weight(p, by);
                } else {
                    j["sign"] = bsign;
                    j["value"] = voronoi_kernel(p, bsign, by);
                }
            } else {
                throw std::invalid_argument("--fn must be J, Kimag, Ypair, W or kernel");
            }
            print(j);
            return kOk;
        }

        if (*tr) {
            if (!tk && !tt) throw std::invalid_argument("transform needs --k or --t");
            TestFunction tf(tA, tB);
            json j{{"A", tA}, {"B", tB}, {"method", tmethod}};
            std::optional<double> closed, quad;
            if (tk) {
                j["k"] = *tk;
                if (tmethod != "quad") {
                    auto c = dot_transform_closed(tf, *tk);
                    closed = c.value;
                    j["closed_coeff"] = rational_str(c.coeff) + " / pi";
                }
                if (tmethod != "closed") {
                    auto q = dot_transform_quadrature(tf, *tk);
                    quad = q.value;
                    j["converged"] = q.converged;
                    j["tail_bound"] = q.tail_bound;
                }
            } else {
                j["t"] = *tt;
                if (tmethod != "quad") closed = tilde_transform_closed(tf, *tt);
                if (tmethod != "closed") {
                    auto q = tilde_transform_quadrature(tf, *tt);
                    quad = q.value;
                    j["converged"] = q.converged;
                    j["tail_bound"] = q.tail_bound;
                }
            }
            if (closed) j["closed"] = *closed;
            if (quad) j["quadrature"] = *quad;
            if (closed && quad) j["rel_error"] = rel_diff(*quad, *closed);
            print(j);
            return kOk;
        }

        if (*ap) {
            auto f = Frequency::parse(ax);
            auto r = f.exact ? dirichlet_approximate(*f.exact, aH) : dirichlet_approximate(f.approx(), aH);
            print(json{{"x", f.name}, {"H", aH}, {"a", r.a}, {"q", r.q}, {"beta", rational_str(r.beta)},
                       {"beta_approx", static_cast<double>(r.beta)}, {"valid", r.valid()}});
            return kOk;
        }

        if (*dc) {
            SmoothWindow w(dZ, dT, parse_shape(dshape));
            auto f = Frequency::parse(dalpha);
            auto r = lemma4_decay_check(w, f, dj);
            print(json{{"Z", dZ}, {"T", dT}, {"alpha", f.name}, {"j", dj}, {"sum_abs", r.sum_abs}, {"bound", r.bound},
                       {"ratio", r.ratio}});
            return kOk;
        }

        if (*vi) {
            auto p = parameter(vkind, vk, vt);
            auto r = voronoi_integral(SmoothWindow(vZ, vT), p, vsign, valpha);
            const double ts = p.t_star();
            json j{{"parameter", p.describe()}, {"sign", vsign},     {"Z", vZ},
                   {"T", vT},                   {"alpha", valpha},   {"value", r.value},
                   {"abs_error", r.abs_error},  {"converged", r.converged},
                   {"bound", lemma6_bound1(vZ, ts, valpha)}};
            if (lemma6_bound2_applies(vZ, ts, valpha)) {
                j["bound_ibp1"] = lemma6_bound2(vZ, vT, ts, valpha, 1);
                j["bound_ibp2"] = lemma6_bound2(vZ, vT, ts, valpha, 2);
            }
            print(j);
            return r.converged ? kOk : kFail;
        }

        if (*ct) {
            if (*cA || *cAsq) {
                ci.N = SquarefreeModulus(cN);
                ci.approx = dirichlet_approximate(Rational(ci.u, cN), cH ? *cH : double(cN));
                const bool sq = cAsq->parsed();
                auto xs = sq ? enumerate_A_square(ci, cfg.box_limit) : enumerate_A(ci, cfg.box_limit);
                auto b = lemma10_bound_check(ci, sq ? CountKind::Square : CountKind::Plain, cfg.box_limit);
                json j{{"kind", sq ? "Asq" : "A"}, {"count", xs.size()}, {"bound", b.bound_value}, {"ratio", b.ratio}};
                if (oracle) {
                    auto ys = enumerate_A_bruteforce(ci, cfg.box_limit);
                    j["oracle_agrees"] = sq ? true : ys == xs;
                }
                if (emit) {
                    json arr = json::array();
                    for (const auto& x : xs) arr.push_back(quad_str(x));
                    j["elements"] = arr;
                }
                print(j);
                return kOk;
            }
            if (*cM) {
                mi.N = SquarefreeModulus(mN);
                auto ms = enumerate_R_N_matrices(mi, cfg.box_limit);
                auto s = matrix_count_split(mi);
                json j{{"count", ms.size()}, {"M", s.M}, {"M0", s.M0}, {"Mstar", s.Mstar},
                       {"m0_ratio", double(s.M0) / m0_shape(mi.n, mi.delta, mi.y)}};
                if (emit) {
                    json arr = json::array();
                    for (const auto& g : ms) arr.push_back({g.a, g.b, g.c, g.d});
                    j["elements"] = arr;
                }
                print(j);
                return kOk;
            }
            if (*cR) {
                cg.N = SquarefreeModulus(gN);
                auto r = count_admissible_a(cg, cfg.box_limit);
                print(json{{"admissible", r.num_a},
                           {"rs_pairs", r.num_rs_pairs},
                           {"max_multiplicity", r.max_multiplicity},
                           {"gcd_bound", r.gcd_bound},
                           {"congruence_violations", r.cong_violations},
                           {"valuation_violations", r.vps_violations},
                           {"units_checked", r.units_checked}});
                return r.cong_violations == 0 && r.vps_violations == 0 &&
                               r.max_multiplicity <= static_cast<std::size_t>(r.gcd_bound)
                           ? kOk
                           : kFail;
            }
        }

        if (*am) {
            SquarefreeModulus N(aN);
            auto chi = achar.empty() ? DirichletCharacter::trivial(N) : DirichletCharacter::parse(achar);
            if (!(chi.modulus() == N)) throw std::invalid_argument("--char modulus must equal --N");
            const i64 pmax = static_cast<i64>(std::ceil(2 * aL)) + 1;
            auto sys = HeckeSystem::random(chi, pmax, aseed ? *aseed : cfg.seed);
            auto rule = aliteral ? SquareCoefficient::ConjChiPSquared : SquareCoefficient::ConjChiP;
            auto a = ais ? build_is_amplifier(sys, aL, N, rule) : build_amplifier(sys, aL, N, rule);
            json terms = json::array();
            for (const auto& t : a.terms)
                terms.push_back({{"ell", t.ell}, {"prime", t.prime}, {"power", t.power}, {"coeff", cplx_json(t.coeff)}});
            auto d = amplifier_diagonal_value(sys, a);
            print(json{{"L", aL},
                       {"N", aN},
                       {"char", chi.spec()},
                       {"variant", ais ? "is" : "standard"},
                       {"lambda1", a.lambda1},
                       {"lambda2", a.lambda2},
                       {"terms", terms},
                       {"diagonal", cplx_json(d)},
                       {"lambda1_size", a.lambda1.size()}});
            return kOk;
        }

        if (*op) {
            if (*ot2) {
                auto r = theorem2_combination();
                print(json{{"weight_x", rational_str(r.weight_x)},
                           {"weight_y", rational_str(r.weight_y)},
                           {"exponent_tstar", rational_str(r.exponent_tstar)},
                           {"exponent_N", rational_str(r.exponent_N)}});
                return kOk;
            }
            auto r = theorem1_final(parse_rational(otheta));
            json j{{"theta", otheta},
                   {"H", r.H.str()},
                   {"L", r.L.str()},
                   {"exponent_N", rational_str(r.exponent_N)},
                   {"exponent_tstar", rational_str(r.exponent_tstar)},
                   {"second_term", r.second_term_raw.str()},
                   {"second_term_absorbed", r.second_term_absorbed.str()},
                   {"ranges_ok", r.ranges_ok},
                   {"dominates_previous", r.dominates_previous}};
            if (otrace) {
                json arr = json::array();
                for (const auto& t : r.trace) arr.push_back({{"step", t.step}, {"detail", t.detail}});
                j["trace"] = arr;
            }
            print(j);
            return kOk;
        }

        if (*vf) {
            if (list) {
                for (const auto& d : property_registry())
                    if (selector_matches(selector, d.id)) std::cout << d.id << "  " << d.anchor << "\n";
                return kOk;
            }
            auto rep = run_verify(cfg, selector);
            if (cfg.output.empty())
                std::cout << (cfg.format == "csv" ? report_csv(rep) : report_json(rep));
            else
                emit_report(rep, cfg.format, cfg.output);
            if (rep.passed()) return kOk;
            return rep.resource_cap_hit() ? kCap : kFail;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
