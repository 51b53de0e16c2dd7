#include "sitepi/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace sitepi {

std::array<double, kFullDim> FullState::to_array() const {
    return {S_h, I_h, R_h, A, M, F_WS, F_WE, F_WI, S_S, S_E, S_I, M_S.value_or(0.0)};
}

FullState FullState::from_array(const double* y, std::size_t dim) {
    FullState s;
    s.S_h = y[iS_h];
    s.I_h = y[iI_h];
    s.R_h = y[iR_h];
    s.A = y[iA];
    s.M = y[iM];
    s.F_WS = y[iF_WS];
    s.F_WE = y[iF_WE];
    s.F_WI = y[iF_WI];
    s.S_S = y[iS_S];
    s.S_E = y[iS_E];
    s.S_I = y[iS_I];
    if (dim >= kFullDim) s.M_S = y[iM_S];
    return s;
}

FullState Trajectory::state_at(std::size_t i) const {
    return FullState::from_array(states[i].data(), dim);
}

double fertile_mating_fraction(const ModelParams& p, double M, double M_S) {
    double pool = M + M_S;
    if (pool <= 0.0) return M_S > 0.0 ? p.eps : 0.0;
    if (M_S <= 0.0) return 1.0;
    return (M + p.eps * M_S) / pool;
}

namespace {

// Shared body for the reduced and non-reduced right-hand sides; M_S is the
// current sterile-male stock, lam_F/lam_M the active release rates.
inline void rhs_core(const ModelParams& p, const double* y, double* dydt,
                     double M_S, double lam_F) {
    const double foi_h = p.B * p.beta_mh * (y[iF_WI] + y[iS_I]) / p.N_h;
    const double foi_m = p.B * p.beta_hm * y[iI_h] / p.N_h;

    const double M = y[iM];
    const double pool = M + M_S;
    double frac_fertile, frac_sterile;
    if (pool <= 0.0) {
        frac_fertile = 0.0;
        frac_sterile = 0.0;
    } else {
        frac_fertile = (M + p.eps * M_S) / pool;
        frac_sterile = (1.0 - p.eps) * M_S / pool;
    }
    const double emergence = p.r * p.gamma * y[iA];

    dydt[iS_h] = p.mu_h * p.N_h - foi_h * y[iS_h] - p.mu_h * y[iS_h];
    dydt[iI_h] = foi_h * y[iS_h] - (p.nu_h + p.mu_h) * y[iI_h];
    dydt[iR_h] = p.nu_h * y[iI_h] - p.mu_h * y[iR_h];

    dydt[iA] = p.phi * (y[iF_WS] + y[iF_WE] + y[iF_WI]) -
               (p.gamma + p.mu_A1 + p.mu_A2 * y[iA]) * y[iA];
    dydt[iM] = (1.0 - p.r) * p.gamma * y[iA] - p.mu_M * M;

    dydt[iF_WS] = frac_fertile * emergence - foi_m * y[iF_WS] - p.mu_S * y[iF_WS];
    dydt[iF_WE] = foi_m * y[iF_WS] - (p.nu_m + p.mu_S) * y[iF_WE];
    dydt[iF_WI] = p.nu_m * y[iF_WE] - p.mu_I * y[iF_WI];

    dydt[iS_S] = lam_F + frac_sterile * emergence - foi_m * y[iS_S] - p.mu_S * y[iS_S];
    dydt[iS_E] = foi_m * y[iS_S] - (p.nu_m + p.mu_S) * y[iS_E];
    dydt[iS_I] = p.nu_m * y[iS_E] - p.mu_I * y[iS_I];
}

} // namespace

void rhs_reduced(const ModelParams& p, const double* y, double* dydt, bool sit_active) {
    const double M_S = sit_active ? (1.0 - p.eps_F) * p.lambda_tot / p.mu_MS : 0.0;
    const double lam_F = sit_active ? p.eps_F * p.lambda_tot : 0.0;
    rhs_core(p, y, dydt, M_S, lam_F);
}

void rhs_full12(const ModelParams& p, const double* y, double* dydt, bool sit_active) {
    const double lam_M = sit_active ? (1.0 - p.eps_F) * p.lambda_tot : 0.0;
    const double lam_F = sit_active ? p.eps_F * p.lambda_tot : 0.0;
    rhs_core(p, y, dydt, y[iM_S], lam_F);
    dydt[iM_S] = lam_M - p.mu_MS * y[iM_S];
}

double effective_reproduction_number(const ModelParams& p, double F_WS, double S_S) {
    return (p.nu_m / (p.nu_m + p.mu_S)) *
           (p.B * p.B * p.beta_mh * p.beta_hm / (p.mu_I * (p.nu_h + p.mu_h))) *
           (F_WS + S_S) / p.N_h;
}

double effective_reproduction_number(const ModelParams& p, const FullState& state) {
    return effective_reproduction_number(p, state.F_WS, state.S_S);
}

FullState default_initial_conditions(const ModelParams& p, const Schedule&) {
    FullState s;
    s.S_h = p.N_h;
    double n = basic_offspring_number(p);
    if (n > 1.0) {
        s.A = (p.gamma + p.mu_A1) * (n - 1.0) / p.mu_A2;
        s.M = (1.0 - p.r) * p.gamma * s.A / p.mu_M;
        s.F_WS = p.r * p.gamma * s.A / p.mu_S;
    }
    return s;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const ModelParams& p;
    std::size_t dim;
    bool sit_active;
    double rtol, atol;

    std::array<double, kFullDim> k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{};

    void deriv(const double* y, double* dydt) const {
        if (dim == kFullDim)
            rhs_full12(p, y, dydt, sit_active);
        else
            rhs_reduced(p, y, dydt, sit_active);
    }

    // One attempted step of size h from y; on acceptance y is advanced in
    // place and the error-based size suggestion is returned through hnext.
    bool try_step(double* y, double h, double& hnext) {
        deriv(y, k1.data());
        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        deriv(ytmp.data(), k2.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        deriv(ytmp.data(), k3.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        deriv(ytmp.data(), k4.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        deriv(ytmp.data(), k5.data());
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
        deriv(ytmp.data(), k6.data());
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        deriv(ynew.data(), k7.data());

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(e) / sc);
        }

        bool negative = false;
        for (std::size_t i = 0; i < dim; ++i)
            if (ynew[i] < -atol) negative = true;

        if (err <= 1.0 && !negative) {
            std::copy_n(ynew.data(), dim, y);
            double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            hnext = h * std::clamp(fac, 0.2, 5.0);
            return true;
        }
        double fac = negative ? 0.5 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
        hnext = h * fac;
        return false;
    }
};

} // namespace

Trajectory integrate(const ModelParams& p, const Schedule& s, const FullState& ic,
                     const IntegrateOptions& opts) {
    if (!(s.horizon > 0.0) || s.t_sit_start < 0.0 || s.t_denv < 0.0 ||
        s.t_denv > s.horizon || s.i0 < 0.0)
        throw ValidationError("schedule: need 0 <= t_sit_start, 0 <= t_denv <= horizon, i0 >= 0");
    if (!(opts.rtol > 0.0) || !(opts.atol_scale > 0.0) || !(opts.dt_out > 0.0))
        throw ValidationError("integration tolerances and output step must be positive");

    const std::size_t dim = s.use_reduced ? kReducedDim : kFullDim;
    const double atol = opts.atol_scale * p.N_h;

    Trajectory traj;
    traj.dim = dim;

    std::array<double, kFullDim> y = ic.to_array();

    auto record = [&](double t) {
        std::array<double, kFullDim> row = y;
        for (std::size_t i = 0; i < dim; ++i)
            if (row[i] < 0.0) row[i] = 0.0;  // clamp sub-atol undershoots
        traj.times.push_back(t);
        traj.states.push_back(row);
        traj.r_eff.push_back(effective_reproduction_number(p, row[iF_WS], row[iS_S]));
    };

    // Breakpoints where the vector field or the state changes discontinuously.
    std::vector<double> breaks;
    if (s.t_sit_start > 0.0 && s.t_sit_start < s.horizon) breaks.push_back(s.t_sit_start);
    if (s.t_denv > 0.0 && s.t_denv < s.horizon) breaks.push_back(s.t_denv);
    breaks.push_back(s.horizon);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return nearly_equal(a, b); }),
                 breaks.end());

    double t = 0.0;
    if (nearly_equal(s.t_denv, 0.0)) {
        y[iI_h] += s.i0;
        y[iS_h] -= s.i0;
    }
    record(t);
    double next_out = opts.dt_out;

    Stepper st{p, dim, /*sit_active=*/s.t_sit_start <= 0.0, opts.rtol, atol};
    const double t_eps = 1e-12 * std::max(1.0, s.horizon);

    for (double tb : breaks) {
        if (tb <= t) continue;
        st.sit_active = t >= s.t_sit_start - kBranchTol;
        double h = std::min(1.0, tb - t);
        while (t < tb - t_eps) {
            // land exactly on output samples and on the segment end
            double target = std::min(tb, next_out);
            double hstep = std::min(h, target - t);
            bool clamped = hstep < h;
            double hnext = hstep;
            if (st.try_step(y.data(), hstep, hnext)) {
                t += hstep;
                if (!clamped || hnext < hstep) h = hnext;
                if (t >= tb - t_eps) break;  // sample at tb handled after the jump
                if (nearly_equal(t, next_out, 1e-9)) {
                    record(t);
                    next_out += opts.dt_out;
                }
            } else {
                h = hnext;
                if (h < 1e-14 * std::max(1.0, s.horizon))
                    throw IntegrationError("step size underflow at t = " + std::to_string(t),
                                           t, std::vector<double>(y.begin(), y.begin() + dim));
            }
        }
        t = tb;
        if (nearly_equal(tb, s.t_denv) && s.t_denv > 0.0) {
            y[iI_h] += s.i0;
            y[iS_h] -= s.i0;
        }
        if (nearly_equal(t, next_out, 1e-9)) {
            record(t);
            next_out += opts.dt_out;
        }
    }
    if (!nearly_equal(traj.times.back(), s.horizon)) record(s.horizon);
    return traj;
}

} // namespace sitepi
