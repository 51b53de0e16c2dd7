#include "sitepi/params.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sitepi {

ModelParams ModelParams::baseline() {
    ModelParams p{};
    p.phi = 10.0;
    p.gamma = 0.0962;
    p.mu_A1 = 0.0262;
    p.r = 0.5;
    p.mu_M = 0.0722;
    p.mu_MS = 0.1;
    p.mu_S = 0.0453;
    p.mu_I = 0.0453;
    p.nu_m = 0.184;
    p.B = 0.25;
    p.beta_mh = 0.3427;
    p.beta_hm = 0.872;
    p.mu_h = 1.0 / (78.0 * 365.0);
    p.nu_h = 1.0 / 7.0;
    p.N_h = 20000.0;
    p.lambda_tot = 0.0;
    p.eps_F = 0.0;
    p.eps = 0.0;
    p.p_mc = 0.0;
    // K = 3 N_h; the rounded table value 1.76e-4 shifts the release
    // thresholds by ~0.5%, the derived value reproduces them exactly.
    double n = basic_offspring_number(p);
    p.mu_A2 = (p.gamma + p.mu_A1) * n / (3.0 * p.N_h);
    return p;
}

double basic_offspring_number(const ModelParams& p) {
    return p.r * p.gamma * p.phi / (p.mu_S * (p.gamma + p.mu_A1));
}

DerivedQuantities derived_quantities(const ModelParams& p) {
    DerivedQuantities d{};
    d.N = basic_offspring_number(p);
    d.Q = p.mu_A2 * p.mu_M / ((p.gamma + p.mu_A1) * (1.0 - p.r) * p.gamma);
    d.M_S_star = (1.0 - p.eps_F) * p.lambda_tot / p.mu_MS;
    d.Q_S = d.Q * d.M_S_star;
    d.alpha_epi = (p.nu_m / p.mu_I) * (p.B * p.beta_mh / (p.nu_h + p.mu_h)) *
                  (p.B * p.beta_hm / (p.nu_m + p.mu_S)) / (p.N_h * p.N_h);
    d.K = (p.gamma + p.mu_A1) * d.N / p.mu_A2;
    return d;
}

std::vector<std::string> validate(const ModelParams& p) {
    std::vector<std::string> issues;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            issues.push_back(std::string(name) + " must be strictly positive");
    };
    if (!(p.phi >= 0.0) || !std::isfinite(p.phi))
        issues.push_back("phi must be >= 0");  // zero fecundity is admissible
    positive(p.gamma, "gamma");
    positive(p.mu_A1, "mu_A1");
    positive(p.mu_A2, "mu_A2");
    positive(p.mu_M, "mu_M");
    positive(p.mu_MS, "mu_MS");
    positive(p.mu_S, "mu_S");
    positive(p.mu_I, "mu_I");
    positive(p.nu_m, "nu_m");
    positive(p.B, "B");
    positive(p.beta_mh, "beta_mh");
    positive(p.beta_hm, "beta_hm");
    positive(p.mu_h, "mu_h");
    positive(p.nu_h, "nu_h");
    positive(p.N_h, "N_h");
    if (!(p.r > 0.0 && p.r < 1.0)) issues.push_back("r out of (0,1)");
    if (!(p.lambda_tot >= 0.0) || !std::isfinite(p.lambda_tot))
        issues.push_back("lambda_tot must be >= 0");
    if (!(p.eps >= 0.0 && p.eps < 1.0)) issues.push_back("eps out of [0,1)");
    if (!(p.eps_F >= 0.0 && p.eps_F <= 1.0)) issues.push_back("eps_F out of [0,1]");
    if (!(p.p_mc >= 0.0 && p.p_mc < 1.0)) issues.push_back("p_mc out of [0,1)");
    if (p.mu_I < p.mu_S) issues.push_back("mu_I < mu_S unsupported");
    return issues;
}

void validate_or_throw(const ModelParams& p) {
    auto issues = validate(p);
    if (issues.empty()) return;
    std::string msg = "invalid parameters:";
    for (const auto& s : issues) msg += "\n  - " + s;
    throw ValidationError(msg);
}

ModelParams apply_mechanical_control(const ModelParams& p) {
    if (!(p.p_mc >= 0.0 && p.p_mc < 1.0))
        throw ValidationError("p_mc out of [0,1): cannot remove all breeding sites");
    ModelParams q = p;
    q.mu_A2 = p.mu_A2 / (1.0 - p.p_mc);
    q.p_mc = 0.0;
    return q;
}

const std::vector<ParamRange>& default_ranges() {
    static const std::vector<ParamRange> ranges = {
        {"mu_h", 1.0 / (80.0 * 365.0), 1.0 / (60.0 * 365.0)},
        {"nu_h", 1.0 / 7.0, 1.0},
        {"B", 0.1, 1.0},
        {"beta_mh", 0.12, 0.57},
        {"beta_hm", 0.4, 0.96},
        {"mu_A1", 0.019, 0.299},
        {"mu_A2", 2e-5, 0.02},
        {"phi", 0.0, 11.0},
        {"gamma", 0.028, 0.12},
        {"r", 0.4, 0.6},
        {"mu_S", 0.035, 0.07},
        {"mu_I", 0.035, 0.07},
        {"mu_M", 0.05, 0.082},
        {"mu_MS", 0.1, 0.2},
        {"nu_m", 0.015, 0.25},
        {"lambda_tot", 0.0, 18000.0},
        {"eps", 0.0, 0.05},
        {"eps_F", 0.0, 0.05},
    };
    return ranges;
}

namespace {

using FieldPtr = double ModelParams::*;

const std::vector<std::pair<std::string, FieldPtr>>& field_table() {
    static const std::vector<std::pair<std::string, FieldPtr>> table = {
        {"phi", &ModelParams::phi},
        {"gamma", &ModelParams::gamma},
        {"mu_A1", &ModelParams::mu_A1},
        {"mu_A2", &ModelParams::mu_A2},
        {"r", &ModelParams::r},
        {"mu_M", &ModelParams::mu_M},
        {"mu_MS", &ModelParams::mu_MS},
        {"mu_S", &ModelParams::mu_S},
        {"mu_I", &ModelParams::mu_I},
        {"nu_m", &ModelParams::nu_m},
        {"B", &ModelParams::B},
        {"beta_mh", &ModelParams::beta_mh},
        {"beta_hm", &ModelParams::beta_hm},
        {"mu_h", &ModelParams::mu_h},
        {"nu_h", &ModelParams::nu_h},
        {"N_h", &ModelParams::N_h},
        {"lambda_tot", &ModelParams::lambda_tot},
        {"eps_F", &ModelParams::eps_F},
        {"eps", &ModelParams::eps},
        {"p_mc", &ModelParams::p_mc},
    };
    return table;
}

FieldPtr find_field(const std::string& key) {
    for (const auto& [name, ptr] : field_table())
        if (name == key) return ptr;
    throw ValidationError("unknown parameter: " + key);
}

} // namespace

void set_param(ModelParams& p, const std::string& key, double value) {
    p.*find_field(key) = value;
}

double get_param(const ModelParams& p, const std::string& key) {
    return p.*find_field(key);
}

const std::vector<std::string>& param_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, ptr] : field_table()) v.push_back(name);
        return v;
    }();
    return names;
}

ModelParams load_config(std::istream& in, const ModelParams& base) {
    ModelParams p = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notblank = line.find_first_not_of(" \t\r\n");
        if (notblank == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'name = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\n");
            auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        size_t consumed = 0;
        double x = 0.0;
        try {
            x = std::stod(val, &consumed);
        } catch (const std::exception&) {
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": cannot parse value '" + val + "'");
        }
        if (consumed != val.size())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": trailing junk in value '" + val + "'");
        set_param(p, key, x);
    }
    return p;
}

ModelParams load_config_file(const std::string& path, const ModelParams& base) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    return load_config(in, base);
}

} // namespace sitepi
