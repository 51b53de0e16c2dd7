// Command-line front end: thresholds, equilibria, classify, simulate,
// sweep and sensitivity subcommands over a shared preset/override pipeline.
// stdout carries machine-readable output (JSON or CSV), stderr diagnostics.
// Exit codes: 0 success, 2 invalid parameters/usage, 1 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sitepi/dynamics.hpp"
#include "sitepi/equilibria.hpp"
#include "sitepi/params.hpp"
#include "sitepi/regimes.hpp"
#include "sitepi/sensitivity.hpp"
#include "sitepi/sweep.hpp"
#include "sitepi/thresholds.hpp"

using nlohmann::json;
using namespace sitepi;

namespace {

struct CommonOpts {
    std::string preset = "baseline";
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--preset", c.preset, "Named preset (baseline)")
        ->capture_default_str();
    cmd->add_option("--config", c.config_path,
                    "Flat 'name = value' parameter file applied over the preset");
    cmd->add_option("--set", c.sets, "Override one parameter, e.g. --set eps_F=0.02")
        ->type_name("KEY=VALUE");
    cmd->add_option("-o,--out", c.out_path, "Write output to this file instead of stdout");
}

ModelParams resolve_params(const CommonOpts& c) {
    ModelParams p;
    if (c.preset == "baseline")
        p = ModelParams::baseline();
    else
        throw ValidationError("unknown preset: " + c.preset);
    if (!c.config_path.empty()) p = load_config_file(c.config_path, p);
    for (const auto& kv : c.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ValidationError("--set expects KEY=VALUE, got '" + kv + "'");
        double value = 0.0;
        try {
            value = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw ValidationError("--set " + kv + ": cannot parse value");
        }
        set_param(p, kv.substr(0, eq), value);
    }
    validate_or_throw(p);
    return apply_mechanical_control(p);
}

std::ostream& open_out(const CommonOpts& c, std::ofstream& file) {
    if (c.out_path.empty()) return std::cout;
    file.open(c.out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + c.out_path);
    return file;
}

json state_to_json(const FullState& s) {
    json j{{"S_h", s.S_h}, {"I_h", s.I_h}, {"R_h", s.R_h},  {"A", s.A},
           {"M", s.M},     {"F_WS", s.F_WS}, {"F_WE", s.F_WE}, {"F_WI", s.F_WI},
           {"S_S", s.S_S}, {"S_E", s.S_E}, {"S_I", s.S_I}};
    if (s.M_S) j["M_S"] = *s.M_S;
    return j;
}

json bundle_to_json(const ThresholdBundle& b) {
    json j;
    j["N"] = b.N;
    j["N_eps"] = b.N_eps;
    j["r0_sq"] = b.r0_sq;
    j["r0_tdfe_sq"] = b.r0_tdfe_sq;
    if (b.lambda_M_crit) j["lambda_M_crit"] = *b.lambda_M_crit;
    if (b.lambda_M_sharp_crit) j["lambda_M_sharp_crit"] = *b.lambda_M_sharp_crit;
    j["lambda_F_crit"] = b.lambda_F_crit;
    j["r0_sit_sq"] = {{"total", b.r0_sit.total},
                      {"wild", b.r0_sit.wild},
                      {"sterile", b.r0_sit.sterile},
                      {"branch", to_string(b.r0_sit.branch)}};
    json reg;
    if (b.regime.r0_NElt1_sq) reg["r0_NElt1_sq"] = *b.regime.r0_NElt1_sq;
    if (b.regime.lambda_M_star) reg["lambda_M_star"] = *b.regime.lambda_M_star;
    if (b.regime.r0_NEgt1_sq) reg["r0_NEgt1_sq"] = *b.regime.r0_NEgt1_sq;
    if (b.regime.lambda_M_crit_sharp) reg["lambda_M_crit_sharp"] = *b.regime.lambda_M_crit_sharp;
    if (b.regime.lambda_M_NEgt1_crit) reg["lambda_M_NEgt1_crit"] = *b.regime.lambda_M_NEgt1_crit;
    j["regime"] = reg;
    json en;
    if (b.endemic.lambda_M_EE_crit) en["lambda_M_EE_crit"] = *b.endemic.lambda_M_EE_crit;
    if (b.endemic.lambda_EE_crit_1) en["lambda_EE_crit_1"] = *b.endemic.lambda_EE_crit_1;
    if (b.endemic.lambda_tot_crit_2) en["lambda_tot_crit_2"] = *b.endemic.lambda_tot_crit_2;
    if (b.endemic.lambda_tot_crit_3) en["lambda_tot_crit_3"] = *b.endemic.lambda_tot_crit_3;
    en["degenerate_equal_mortality"] = b.endemic.degenerate_equal_mortality;
    en["unbounded_female_thresholds"] = b.endemic.unbounded_female_thresholds;
    j["endemic"] = en;
    if (!b.note.empty()) j["note"] = b.note;
    return j;
}

json equilibrium_to_json(const LabeledEquilibrium& e) {
    return json{{"tag", to_string(e.tag)},
                {"state", state_to_json(e.state)},
                {"residual", e.residual_norm},
                {"stability", to_string(e.stability)}};
}

int cmd_thresholds(const CommonOpts& c) {
    ModelParams p = resolve_params(c);
    std::ofstream file;
    open_out(c, file) << bundle_to_json(compute_thresholds(p)).dump(2) << "\n";
    return 0;
}

int cmd_equilibria(const CommonOpts& c, bool check_stability) {
    ModelParams p = resolve_params(c);
    auto eqs = check_stability ? equilibria_with_stability(p) : all_equilibria(p);
    json j;
    j["equilibria"] = json::array();
    for (const auto& e : eqs) j["equilibria"].push_back(equilibrium_to_json(e));
    if (p.mu_S < p.mu_I && !nearly_equal(p.mu_I, p.mu_S)) {
        auto cls = endemic_root_classification(p);
        json jc;
        jc["coefficients"] = cls.coeff;
        jc["sign_pattern"] = cls.sign_pattern;
        jc["descartes_counts"] = cls.descartes_counts;
        jc["positive_root_count"] = cls.positive_root_count;
        jc["roots"] = cls.roots;
        jc["states"] = json::array();
        for (const auto& e : cls.states) jc["states"].push_back(equilibrium_to_json(e));
        j["endemic_classification"] = jc;
    }
    std::ofstream file;
    open_out(c, file) << j.dump(2) << "\n";
    return 0;
}

int cmd_classify(const CommonOpts& c, bool check_stability) {
    ModelParams p = resolve_params(c);
    RegimeReport rep = classify(p);
    json j;
    j["N"] = rep.N;
    j["N_eps"] = rep.N_eps;
    j["r0_sq"] = rep.r0_sq;
    j["r0_tdfe_sq"] = rep.r0_tdfe_sq;
    j["eps_F_lambda_tot"] = rep.eps_F_lambda;
    j["male_release"] = rep.male_release;
    j["lambda_F_crit"] = rep.lambda_F_crit;
    j["r0_sit_sq"] = {{"total", rep.r0_sit.total},
                      {"wild", rep.r0_sit.wild},
                      {"sterile", rep.r0_sit.sterile},
                      {"branch", to_string(rep.r0_sit.branch)}};
    j["elimination_feasible"] = rep.elimination_feasible;
    j["epi_risk_controllable"] = rep.epi_risk_controllable;
    j["observation"] = to_string(rep.observation);
    j["observation_text"] = rep.observation_text;
    json st = json::array();
    for (Tag t : rep.stable_equilibria) st.push_back(to_string(t));
    j["predicted_stable"] = st;
    if (check_stability) {
        json eqj = json::array();
        for (const auto& e : equilibria_with_stability(p)) eqj.push_back(equilibrium_to_json(e));
        j["equilibria"] = eqj;
    }
    std::ofstream file;
    open_out(c, file) << j.dump(2) << "\n";
    return 0;
}

void write_csv_row(std::ostream& os, const double* vals, std::size_t n) {
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.10g", vals[i]);
        os << (i ? "," : "") << buf;
    }
    os << "\n";
}

int cmd_simulate(const CommonOpts& c, Schedule s, IntegrateOptions iopts) {
    ModelParams p = resolve_params(c);
    Trajectory tr = integrate(p, s, default_initial_conditions(p, s), iopts);
    std::ofstream file;
    std::ostream& os = open_out(c, file);
    os << "t,S_h,I_h,R_h,A,M,F_WS,F_WE,F_WI,S_S,S_E,S_I";
    if (tr.dim == kFullDim) os << ",M_S";
    os << ",R_eff\n";
    std::vector<double> row(tr.dim + 2);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        row[0] = tr.times[i];
        for (std::size_t j = 0; j < tr.dim; ++j) row[1 + j] = tr.states[i][j];
        row[tr.dim + 1] = tr.r_eff[i];
        write_csv_row(os, row.data(), tr.dim + 2);
    }
    return 0;
}

int cmd_sweep(const CommonOpts& c, const std::string& sweep_cfg_path, unsigned workers) {
    ModelParams base = resolve_params(c);
    SweepConfig cfg = load_sweep_config_file(sweep_cfg_path, base);
    cfg.workers = workers;
    SweepResult res = run_sweep(cfg);

    std::string prefix = c.out_path.empty() ? "sweep" : c.out_path;
    std::ofstream csv(prefix + ".csv");
    if (!csv) throw std::runtime_error("cannot open " + prefix + ".csv");
    const bool two_d = !res.axis2.empty();
    csv << (two_d ? "axis1,axis2,metric\n" : "axis1,metric\n");
    for (std::size_t i1 = 0; i1 < res.axis1.size(); ++i1) {
        if (two_d) {
            for (std::size_t i2 = 0; i2 < res.axis2.size(); ++i2) {
                double row[3] = {res.axis1[i1], res.axis2[i2], res.at(i1, i2)};
                write_csv_row(csv, row, 3);
            }
        } else {
            double row[2] = {res.axis1[i1], res.at(i1)};
            write_csv_row(csv, row, 2);
        }
    }
    json meta;
    meta["metric"] = to_string(cfg.metric);
    if (cfg.metric == SweepMetric::TimeToReffBelow) meta["threshold"] = cfg.threshold;
    meta["axis1"] = {{"param", cfg.axis1.param}, {"min", cfg.axis1.min},
                     {"max", cfg.axis1.max}, {"steps", cfg.axis1.steps}};
    if (cfg.axis2)
        meta["axis2"] = {{"param", cfg.axis2->param}, {"min", cfg.axis2->min},
                         {"max", cfg.axis2->max}, {"steps", cfg.axis2->steps}};
    meta["failed_cells"] = res.failed_cells;
    meta["schedule"] = {{"t_sit_start", cfg.schedule.t_sit_start},
                        {"t_denv", cfg.schedule.t_denv},
                        {"i0", cfg.schedule.i0},
                        {"horizon", cfg.schedule.horizon}};
    std::ofstream mj(prefix + ".meta.json");
    mj << meta.dump(2) << "\n";
    std::cerr << "sweep: wrote " << prefix << ".csv and " << prefix << ".meta.json\n";
    return 0;
}

int cmd_sensitivity(const CommonOpts& c, SensitivityOptions opts) {
    opts.base = resolve_params(c);
    SensitivityReport rep = sensitivity_run(opts);
    std::ofstream file;
    std::ostream& os = open_out(c, file);
    os << "parameter,prcc,ci_low,ci_high\n";
    char buf[128];
    for (const auto& e : rep.entries) {
        std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g,%.10g", e.name.c_str(), e.prcc,
                      e.ci_lo, e.ci_hi);
        os << buf << "\n";
    }
    if (!c.out_path.empty()) {
        json meta{{"n", rep.n},
                  {"n_boot", rep.n_boot},
                  {"level", rep.level},
                  {"seed", rep.seed},
                  {"window", {rep.window_lo, rep.window_hi}},
                  {"output_variable", rep.output_variable},
                  {"failed_rows", rep.failed_rows}};
        std::ofstream mj(c.out_path + ".meta.json");
        mj << meta.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sterile-insect release planning for mosquito-borne disease control"};
    app.require_subcommand(1);

    CommonOpts c_thresholds, c_equilibria, c_classify, c_simulate, c_sweep, c_sensitivity;

    auto* sub_thresholds =
        app.add_subcommand("thresholds", "Critical release rates and reproduction numbers (JSON)");
    add_common(sub_thresholds, c_thresholds);

    auto* sub_equilibria = app.add_subcommand("equilibria", "Steady states with residuals (JSON)");
    add_common(sub_equilibria, c_equilibria);
    bool eq_stab = false;
    sub_equilibria->add_flag("--check-stability", eq_stab, "Label each state from its spectrum");

    auto* sub_classify = app.add_subcommand("classify", "Qualitative regime report (JSON)");
    add_common(sub_classify, c_classify);
    bool cl_stab = false;
    sub_classify->add_flag("--check-stability", cl_stab,
                           "Also label every equilibrium from its spectrum");

    auto* sub_simulate = app.add_subcommand("simulate", "Time integration (CSV)");
    add_common(sub_simulate, c_simulate);
    Schedule sched;
    IntegrateOptions iopts;
    bool full_system = false;
    sub_simulate->add_option("--t-sit-start", sched.t_sit_start, "Release start day")
        ->capture_default_str();
    sub_simulate->add_option("--t-denv", sched.t_denv, "Virus introduction day")
        ->capture_default_str();
    sub_simulate->add_option("--i0", sched.i0, "Infected humans introduced")
        ->capture_default_str();
    sub_simulate->add_option("--horizon", sched.horizon, "Days simulated")
        ->capture_default_str();
    sub_simulate->add_flag("--full", full_system,
                           "Track the sterile-male pool explicitly (adds M_S column)");
    sub_simulate->add_option("--dt-out", iopts.dt_out, "Output sampling step, days")
        ->capture_default_str();
    sub_simulate->add_option("--rtol", iopts.rtol, "Relative tolerance")->capture_default_str();
    sub_simulate->add_option("--atol-scale", iopts.atol_scale,
                             "Absolute tolerance as a fraction of N_h")
        ->capture_default_str();

    auto* sub_sweep = app.add_subcommand("sweep", "Grid evaluation of a metric (CSV + metadata)");
    std::string sweep_cfg;
    unsigned sweep_workers = 0;
    sub_sweep->add_option("--preset", c_sweep.preset, "Named preset (baseline)")
        ->capture_default_str();
    sub_sweep->add_option("--config", sweep_cfg,
                          "Sweep description: parameters, schedule, metric, axis1.*/axis2.*")
        ->required();
    sub_sweep->add_option("--set", c_sweep.sets, "Override one base parameter")
        ->type_name("KEY=VALUE");
    sub_sweep->add_option("-o,--out", c_sweep.out_path, "Output prefix (default: sweep)");
    sub_sweep->add_option("--workers", sweep_workers, "Worker threads (default: all cores)");

    auto* sub_sensitivity =
        app.add_subcommand("sensitivity", "Stratified-sample rank sensitivity (CSV + metadata)");
    add_common(sub_sensitivity, c_sensitivity);
    SensitivityOptions sopts;
    std::string selector = "F_wild_total";
    sub_sensitivity->add_option("--selector", selector,
                                "Output variable: F_wild_total, S_I, F_WI, I_h")
        ->capture_default_str();
    sub_sensitivity->add_option("-n,--samples", sopts.n, "Sample count")->capture_default_str();
    sub_sensitivity->add_option("--n-boot", sopts.n_boot, "Bootstrap replicates")
        ->capture_default_str();
    sub_sensitivity->add_option("--level", sopts.level, "Bootstrap confidence level")
        ->capture_default_str();
    sub_sensitivity->add_option("--seed", sopts.seed, "Random seed")->capture_default_str();
    sub_sensitivity->add_option("--window-lo", sopts.window_lo, "Output window start, days")
        ->capture_default_str();
    sub_sensitivity->add_option("--window-hi", sopts.window_hi, "Output window end, days")
        ->capture_default_str();
    sub_sensitivity->add_option("--i0", sopts.schedule.i0,
                                "Infected humans introduced at day 0 (0 = no virus)")
        ->capture_default_str();
    sub_sensitivity->add_option("--workers", sopts.workers, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (sub_thresholds->parsed()) return cmd_thresholds(c_thresholds);
        if (sub_equilibria->parsed()) return cmd_equilibria(c_equilibria, eq_stab);
        if (sub_classify->parsed()) return cmd_classify(c_classify, cl_stab);
        if (sub_simulate->parsed()) {
            sched.use_reduced = !full_system;
            return cmd_simulate(c_simulate, sched, iopts);
        }
        if (sub_sweep->parsed()) return cmd_sweep(c_sweep, sweep_cfg, sweep_workers);
        if (sub_sensitivity->parsed()) {
            sopts.selector = output_selector_from_string(selector);
            sopts.schedule.horizon = sopts.window_hi;
            return cmd_sensitivity(c_sensitivity, sopts);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
