#include "supnorm/config.hpp"

#include <fstream>
#include <stdexcept>

namespace supnorm {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto a = s.find_first_not_of(ws);
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d = 0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != v.size()) throw std::invalid_argument("config: '" + key + "' needs a number, got '" + v + "'");
    return d;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot read " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "transform_rtol")
        transform_rtol = to_double(key, value);
    else if (key == "recurrence_tol")
        recurrence_tol = to_double(key, value);
    else if (key == "ibp_rtol")
        ibp_rtol = to_double(key, value);
    else if (key == "float_rtol")
        float_rtol = to_double(key, value);
    else if (key == "box_limit")
        box_limit = to_double(key, value);
    else if (key == "time_budget")
        time_budget = to_double(key, value);
    else if (key == "seed") {
        try {
            std::size_t pos = 0;
            seed = std::stoull(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("config: seed must be an unsigned integer, got '" + value + "'");
        }
    } else if (key == "format")
        format = value;
    else if (key == "output")
        output = value;
    else
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
    for (double v : {transform_rtol, recurrence_tol, ibp_rtol, float_rtol})
        if (!(v > 0)) throw std::invalid_argument("config: tolerances must be positive");
    if (!(box_limit > 0) || !(time_budget > 0)) throw std::invalid_argument("config: caps must be positive");
    if (format != "json" && format != "csv") throw std::invalid_argument("config: format must be json or csv");
}

}  // namespace supnorm
