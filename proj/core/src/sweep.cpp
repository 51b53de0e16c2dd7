#include "sitepi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "sitepi/sensitivity.hpp"
#include "sitepi/thresholds.hpp"

namespace sitepi {

const char* to_string(SweepMetric m) {
    switch (m) {
        case SweepMetric::REffAtTDenv: return "r_eff_at_tdenv";
        case SweepMetric::R0SitSq: return "r0_sit_sq";
        case SweepMetric::FinalA: return "final_A";
        case SweepMetric::TimeToReffBelow: return "time_to_reff_below";
    }
    return "?";
}

SweepMetric sweep_metric_from_string(const std::string& s) {
    if (s == "r_eff_at_tdenv") return SweepMetric::REffAtTDenv;
    if (s == "r0_sit_sq") return SweepMetric::R0SitSq;
    if (s == "final_A") return SweepMetric::FinalA;
    if (s == "time_to_reff_below") return SweepMetric::TimeToReffBelow;
    throw ValidationError("unknown sweep metric: " + s);
}

SweepConfig::SweepConfig() : base(ModelParams::baseline()) {}

double SweepResult::at(std::size_t i1, std::size_t i2) const {
    std::size_t n2 = axis2.empty() ? 1 : axis2.size();
    return values[i1 * n2 + i2];
}

namespace {

bool is_schedule_key(const std::string& key) {
    return key == "t_sit_start" || key == "t_denv" || key == "i0" || key == "horizon";
}

void assign(ModelParams& p, Schedule& s, const std::string& key, double value) {
    if (key == "t_sit_start") s.t_sit_start = value;
    else if (key == "t_denv") s.t_denv = value;
    else if (key == "i0") s.i0 = value;
    else if (key == "horizon") s.horizon = value;
    else set_param(p, key, value);
}

double eval_cell(const SweepConfig& cfg, double v1, std::optional<double> v2) {
    ModelParams p = cfg.base;
    Schedule s = cfg.schedule;
    assign(p, s, cfg.axis1.param, v1);
    if (v2) assign(p, s, cfg.axis2->param, *v2);
    p = apply_mechanical_control(p);
    validate_or_throw(p);

    if (cfg.metric == SweepMetric::R0SitSq) return r0_sit_squared(p).total;

    Trajectory tr = integrate(p, s, default_initial_conditions(p, s));
    switch (cfg.metric) {
        case SweepMetric::REffAtTDenv: {
            // sample at (or just before) the introduction time
            std::size_t best = 0;
            for (std::size_t i = 0; i < tr.times.size(); ++i)
                if (tr.times[i] <= s.t_denv + 1e-9) best = i;
            return tr.r_eff[best];
        }
        case SweepMetric::FinalA:
            return tr.back()[iA];
        case SweepMetric::TimeToReffBelow: {
            for (std::size_t i = 0; i < tr.times.size(); ++i)
                if (tr.r_eff[i] < cfg.threshold) return tr.times[i];
            return s.horizon + 1.0;  // never reached
        }
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

std::vector<double> axis_nodes(const AxisSpec& a) {
    std::vector<double> v(a.steps);
    for (int i = 0; i < a.steps; ++i)
        v[i] = a.min + (a.max - a.min) * static_cast<double>(i) / (a.steps - 1);
    return v;
}

} // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.axis1.steps < 2 || (cfg.axis2 && cfg.axis2->steps < 2))
        throw ValidationError("sweep axes need at least 2 steps");
    if (cfg.axis2 && cfg.axis2->param == cfg.axis1.param)
        throw ValidationError("sweep axes must reference distinct parameters");
    if (!is_schedule_key(cfg.axis1.param)) get_param(cfg.base, cfg.axis1.param);
    if (cfg.axis2 && !is_schedule_key(cfg.axis2->param)) get_param(cfg.base, cfg.axis2->param);

    SweepResult res;
    res.axis1 = axis_nodes(cfg.axis1);
    if (cfg.axis2) res.axis2 = axis_nodes(*cfg.axis2);
    const std::size_t n1 = res.axis1.size();
    const std::size_t n2 = res.axis2.empty() ? 1 : res.axis2.size();
    res.values.assign(n1 * n2, 0.0);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    std::mutex err_mutex;
    std::string first_error;
    const std::size_t total = n1 * n2;
    auto work = [&] {
        for (std::size_t c = next.fetch_add(1); c < total; c = next.fetch_add(1)) {
            std::size_t i1 = c / n2, i2 = c % n2;
            std::optional<double> v2;
            if (!res.axis2.empty()) v2 = res.axis2[i2];
            try {
                res.values[c] = eval_cell(cfg, res.axis1[i1], v2);
            } catch (const IntegrationError&) {
                res.values[c] = std::numeric_limits<double>::quiet_NaN();
                failures.fetch_add(1);
            } catch (const std::exception& e) {
                // invalid cell parameters abort the whole sweep
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error.empty()) first_error = e.what();
                res.values[c] = std::numeric_limits<double>::quiet_NaN();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0, nw = resolve_workers(cfg.workers); w < nw; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw ValidationError("sweep cell: " + first_error);

    res.failed_cells = failures.load();
    if (res.failed_cells * 20 > total)
        throw std::runtime_error("sweep: more than 5% of cells failed to integrate");
    return res;
}

SweepConfig parse_sweep_config(std::istream& in, const ModelParams& base) {
    SweepConfig cfg;
    cfg.base = base;
    AxisSpec ax1{}, ax2{};
    bool have_ax2 = false;

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
            throw ValidationError("sweep config line " + std::to_string(lineno) +
                                  ": expected 'name = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\n");
            auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));

        auto axis_field = [&](AxisSpec& ax, const std::string& field) {
            if (field == "param") ax.param = val;
            else if (field == "min") ax.min = std::stod(val);
            else if (field == "max") ax.max = std::stod(val);
            else if (field == "steps") ax.steps = std::stoi(val);
            else throw ValidationError("unknown axis field: " + field);
        };

        if (key.rfind("axis1.", 0) == 0) {
            axis_field(ax1, key.substr(6));
        } else if (key.rfind("axis2.", 0) == 0) {
            have_ax2 = true;
            axis_field(ax2, key.substr(6));
        } else if (key == "metric") {
            cfg.metric = sweep_metric_from_string(val);
        } else if (key == "metric.threshold") {
            cfg.threshold = std::stod(val);
        } else if (is_schedule_key(key)) {
            assign(cfg.base, cfg.schedule, key, std::stod(val));
        } else {
            set_param(cfg.base, key, std::stod(val));
        }
    }
    if (ax1.param.empty()) throw ValidationError("sweep config: axis1.param is required");
    cfg.axis1 = ax1;
    if (have_ax2) cfg.axis2 = ax2;
    return cfg;
}

SweepConfig load_sweep_config_file(const std::string& path, const ModelParams& base) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sweep config: " + path);
    return parse_sweep_config(in, base);
}

} // namespace sitepi
