// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "supnorm/verify.hpp"

using namespace supnorm;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> properties;
    double time_limit;  // seconds
    std::size_t min_instances = 0;  // per property, 0 for no requirement
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "transform closed forms vs quadrature", {"transforms/closed-vs-quadrature"}, 60},
        {2, "transform positivity, exact", {"transforms/positivity"}, 1},
        {3, "exponent reproduction, exact", {"exponents/reproduced-values"}, 1},
        {4, "box counting bounds and dual oracle",
         {"counting/dual-oracle", "counting/box-bound-plain", "counting/box-bound-square"}, 120, 200},
        {5, "congruence reduction", {"counting/congruence-reduction"}, 60, 100},
        {6, "matrix counting", {"counting/matrix-completeness", "counting/m0-bound", "counting/geometric-sum"}, 120, 50},
        {7, "amplifier diagonal identity", {"amplifier/diagonal-float", "amplifier/diagonal-exact"}, 5, 50},
        {8, "special-function property grid",
         {"special-functions/bessel3-shape", "special-functions/bessel5-shape", "special-functions/whittaker-derivatives",
          "special-functions/derivative-recurrence", "special-functions/ibp-identity",
          "special-functions/kbessel-transition", "oscillatory/kernel-integral", "oscillatory/kernel-integral-ibp1",
          "oscillatory/kernel-integral-ibp2"},
         120},
        {9, "Poisson decay constants and slope", {"oscillatory/poisson-decay", "oscillatory/poisson-slope"}, 30},
    };

    RunConfig cfg;
    bool all_ok = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string summary;
        for (const auto& id : c.properties) {
            PropertyRecord r = run_property(id, cfg);
            bool enough = r.instances >= c.min_instances;
            ok = ok && r.passed && enough;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s%s=%.3g/%.3g n=%zu%s%s", summary.empty() ? "" : "; ", id.c_str(),
                          r.fitted_constant, r.limit, r.instances, r.errors ? " errors" : "",
                          enough ? "" : " too-few-instances");
            summary += buf;
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.time_limit;
        ok = ok && in_time;
        all_ok = all_ok && ok;
        std::printf("criterion %d %s: %s (%.2fs of %.0fs%s) %s\n", c.number, c.title.c_str(), ok ? "PASS" : "FAIL", dt,
                    c.time_limit, in_time ? "" : ", over time", summary.c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
