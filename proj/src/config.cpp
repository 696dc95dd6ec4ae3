#include "selfspec/config.h"
#include "selfspec/errors.h"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <string>

namespace selfspec {

using nlohmann::json;

double parse_fraction(const std::string& text) {
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            size_t used = 0;
            double v = std::stod(text, &used);
            while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
                ++used;
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den == 0)
            throw Error(ErrorKind::ConfigError, "zero denominator in \"" + text + "\"");
        return static_cast<double>(num) / static_cast<double>(den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ConfigError, "cannot parse number \"" + text + "\"");
    }
}

namespace {

double number_field(const json& v, const std::string& name) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_fraction(v.get<std::string>());
    throw Error(ErrorKind::ConfigError, "field \"" + name + "\" must be a number or \"p/q\"");
}

std::vector<double> number_array(const json& j, const std::string& name) {
    if (!j.contains(name) || !j[name].is_array())
        throw Error(ErrorKind::ConfigError, "field \"" + name + "\" must be an array");
    std::vector<double> out;
    for (const json& v : j[name]) out.push_back(number_field(v, name));
    return out;
}

} // namespace

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ConfigError, "cannot open config file " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, true); // allow comments
    } catch (const std::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("config parse failure: ") + e.what());
    }

    JobConfig cfg;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw Error(ErrorKind::ConfigError, "field \"n\" (integer) is required");
    cfg.params.n = j["n"].get<int>();
    cfg.params.a = number_array(j, "a");
    cfg.params.beta = number_array(j, "beta");
    cfg.params.d = number_array(j, "d");
    if (j.contains("N") &&
        j["N"].get<int>() != static_cast<int>(cfg.params.a.size()))
        throw Error(ErrorKind::ConfigError, "field \"N\" contradicts the length of \"a\"");

    if (j.contains("depth")) {
        const json& d = j["depth"];
        if (d.is_string() && d.get<std::string>() == "auto") {
            cfg.depth = -1;
        } else if (d.is_number_integer()) {
            cfg.depth = d.get<int>();
            if (cfg.depth < 1)
                throw Error(ErrorKind::ConfigError, "explicit depth must be at least 1");
        } else {
            throw Error(ErrorKind::ConfigError, "field \"depth\" must be an integer or \"auto\"");
        }
    }
    if (j.contains("pos_count")) cfg.pos_count = j["pos_count"].get<int>();
    if (j.contains("neg_count")) cfg.neg_count = j["neg_count"].get<int>();
    if (cfg.pos_count < 0 || cfg.neg_count < 0)
        throw Error(ErrorKind::ConfigError, "eigenvalue counts must be nonnegative");
    if (j.contains("rel_tol")) cfg.rel_tol = number_field(j["rel_tol"], "rel_tol");
    if (cfg.rel_tol < 1e-14)
        throw Error(ErrorKind::ConfigError, "rel_tol below 1e-14 is not resolvable");
    if (j.contains("auto_depth_tol"))
        cfg.auto_depth_tol = number_field(j["auto_depth_tol"], "auto_depth_tol");
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("format")) {
        cfg.format = j["format"].get<std::string>();
        if (cfg.format != "csv" && cfg.format != "text")
            throw Error(ErrorKind::ConfigError, "format must be csv or text");
    }
    if (j.contains("force")) cfg.force = j["force"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    return cfg;
}

TablePreset preset_table(int id) {
    TablePreset t;
    t.id = id;
    t.params.n = 2;
    t.params.a = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    switch (id) {
    case 1:
        t.params.beta = {0.0, 2.0 / 3.0, 1.0};
        t.params.d = {0.0, 0.0, 0.5};
        t.pos_count = 8;
        t.rows = {
            {1, 1, 0, 2.86e2, 286.10},  {2, 2, 0, 1.38e3, 1377.99},
            {3, 1, 1, 1.48e4, 273.71},  {4, 2, 1, 6.83e4, 1265.31},
            {5, 1, 2, 7.91e5, 271.33},  {6, 2, 2, 3.69e6, 1264.04},
            {7, 1, 3, 4.27e7, 271.32},  {8, 2, 3, 1.99e8, 1264.04},
        };
        break;
    case 2:
        t.params.beta = {0.0, -1.0, 0.0};
        t.params.d = {0.0, 0.0, 0.5};
        t.neg_count = 4;
        t.rows = {
            {-1, 1, 0, 3.70e2, 369.75},
            {-2, 1, 1, 8.51e3, 157.53},
            {-3, 1, 2, 4.58e5, 157.20},
            {-4, 1, 3, 2.48e7, 157.20},
        };
        break;
    case 3:
        t.params.beta = {0.0, -1.0, 0.0};
        t.params.d = {0.0, 0.0, -0.5};
        t.pos_count = 6;
        t.neg_count = 7;
        t.rows = {
            {1, 1, 0, 3.04e2, 304.08},    {2, 2, 0, 1.38e4, 13820.11},
            {3, 1, 1, 8.72e5, 299.00},    {4, 2, 1, 4.01e7, 13764.02},
            {5, 1, 2, 2.54e9, 299.00},    {6, 2, 2, 1.17e11, 13764.02},
            {-2, 1, 0, 1.61e4, 299.04},   {-3, 2, 0, 7.43e5, 13764.22},
            {-4, 1, 1, 4.71e7, 299.00},   {-5, 2, 1, 2.17e9, 13764.02},
            {-6, 1, 2, 1.37e11, 299.00},  {-7, 2, 2, 6.32e12, 13764.02},
        };
        break;
    default:
        throw Error(ErrorKind::ConfigError, "table id must be 1, 2 or 3");
    }
    return t;
}

} // namespace selfspec
