#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "supnorm/verify.hpp"

using namespace supnorm;

TEST_CASE("selector globbing") {
    CHECK(selector_matches("*", "a/b"));
    CHECK(selector_matches("transforms/*", "transforms/positivity"));
    CHECK_FALSE(selector_matches("transforms/*", "counting/dual-oracle"));
    CHECK(selector_matches("*/pos?tivity", "transforms/positivity"));
    CHECK_FALSE(selector_matches("a?", "a"));
}

TEST_CASE("property ids are unique and well-formed") {
    std::set<std::string> seen;
    for (const auto& d : property_registry()) {
        CHECK(seen.insert(d.id).second);
        CHECK(d.id.find('/') != std::string::npos);
        CHECK_FALSE(d.anchor.empty());
    }
}

TEST_CASE("empty selection passes") {
    auto r = run_verify(RunConfig{}, "nothing/*");
    CHECK(r.properties.empty());
    CHECK(r.passed());
}

TEST_CASE("reports are deterministic under a fixed seed") {
    RunConfig cfg;
    auto a = report_json(run_verify(cfg, "arithmetic/*"));
    auto b = report_json(run_verify(cfg, "arithmetic/*"));
    CHECK(a == b);
    cfg.seed = 7;
    auto c = report_json(run_verify(cfg, "arithmetic/*"));
    CHECK(c.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("JSON schema and CSV shape") {
    auto rep = run_verify(RunConfig{}, "kloosterman/*");
    auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j["version"] == kReportVersion);
    CHECK(j["properties"].size() == rep.properties.size());
    for (const auto& p : j["properties"])
        for (const char* k : {"id", "anchor", "instances", "fitted_constant", "limit", "max_ratio", "passed"})
            CHECK(p.contains(k));
    std::istringstream csv(report_csv(rep));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == rep.properties.size() + 1);
}

TEST_CASE("transform suite size") {
    auto rep = run_verify(RunConfig{}, "transforms/closed-vs-quadrature");
    REQUIRE(rep.properties.size() == 1);
    CHECK(rep.properties[0].instances >= 20);
    CHECK(rep.properties[0].passed);
}

TEST_CASE("atomic report writing") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "supnorm_report_test";
    fs::create_directories(dir);
    auto path = (dir / "r.json").string();
    write_atomically(path, "{}\n");
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), {});
    CHECK(body == "{}\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
    CHECK_THROWS_AS(write_atomically((dir / "missing" / "r.json").string(), "x"), std::runtime_error);
    CHECK_THROWS_AS(emit_report(VerificationReport{}, "xml", path), std::invalid_argument);
    fs::remove_all(dir);
}

TEST_CASE("config file and overrides") {
    namespace fs = std::filesystem;
    auto path = (fs::temp_directory_path() / "supnorm_cfg_test.conf").string();
    {
        std::ofstream out(path);
        out << "# comment\nseed = 42\nformat = csv  # trailing\nbox_limit = 1e6\n";
    }
    auto cfg = RunConfig::from_file(path);
    CHECK(cfg.seed == 42);
    CHECK(cfg.format == "csv");
    CHECK(cfg.box_limit == 1e6);
    CHECK_THROWS_AS(cfg.set("nope", "1"), std::invalid_argument);
    CHECK_THROWS_AS(cfg.set("ibp_rtol", "abc"), std::invalid_argument);
    cfg.set("ibp_rtol", "-1");
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    fs::remove(path);
}
