// Test-only oracles, kept independent of the library's computation paths:
// a second transcription of the vector field, bracketing/bisection root
// finders, a dense sign-scan for cubics, and finite-difference Jacobians.
#ifndef SITEPI_TESTS_ORACLES_HPP
#define SITEPI_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "sitepi/dynamics.hpp"
#include "sitepi/params.hpp"
#include "sitepi/regimes.hpp"

namespace oracles {

using sitepi::ModelParams;

// Second, independently written transcription of the reduced vector field
// (releases active), one balance per compartment.
inline std::array<double, 11> rhs_transcription(const ModelParams& p,
                                                const std::array<double, 12>& y) {
    const double Sh = y[0], Ih = y[1], Rh = y[2];
    const double A = y[3], M = y[4];
    const double Fs = y[5], Fe = y[6], Fi = y[7];
    const double Ss = y[8], Se = y[9], Si = y[10];

    const double Ms = (1.0 - p.eps_F) * p.lambda_tot / p.mu_MS;
    double mate_fertile = 0.0, mate_sterile = 0.0;
    if (M + Ms > 0.0) {
        mate_fertile = (M + p.eps * Ms) / (M + Ms);
        mate_sterile = ((1.0 - p.eps) * Ms) / (M + Ms);
    }
    const double bite_h = p.B * p.beta_mh * (Fi + Si) / p.N_h;
    const double bite_m = p.B * p.beta_hm * Ih / p.N_h;

    std::array<double, 11> f{};
    f[0] = p.mu_h * p.N_h - bite_h * Sh - p.mu_h * Sh;
    f[1] = bite_h * Sh - p.nu_h * Ih - p.mu_h * Ih;
    f[2] = p.nu_h * Ih - p.mu_h * Rh;
    f[3] = p.phi * (Fs + Fe + Fi) - (p.gamma + p.mu_A1 + p.mu_A2 * A) * A;
    f[4] = (1.0 - p.r) * p.gamma * A - p.mu_M * M;
    f[5] = mate_fertile * p.r * p.gamma * A - bite_m * Fs - p.mu_S * Fs;
    f[6] = bite_m * Fs - (p.nu_m + p.mu_S) * Fe;
    f[7] = p.nu_m * Fe - p.mu_I * Fi;
    f[8] = p.eps_F * p.lambda_tot + mate_sterile * p.r * p.gamma * A - bite_m * Ss - p.mu_S * Ss;
    f[9] = bite_m * Ss - (p.nu_m + p.mu_S) * Se;
    f[10] = p.nu_m * Se - p.mu_I * Si;
    return f;
}

// All roots of q(a) = (1 - N*eps) a^2 + (1 + Q_S - N) a + Q_S on (0, hi),
// located by sign-change scanning and bisection to rel_tol. The scan grid is
// log-spaced so widely separated roots are both bracketed.
inline std::vector<double> bisect_ratio_roots(double n, double eps, double q_s,
                                              double rel_tol = 1e-12) {
    auto q = [&](double a) { return (1.0 - n * eps) * a * a + (1.0 + q_s - n) * a + q_s; };
    // Cauchy bound on root magnitude, then some headroom
    const double lead = std::abs(1.0 - n * eps);
    double hi = 1e6;
    if (lead > 0.0)
        hi = std::max(hi, 2.0 * (1.0 + std::max(std::abs(1.0 + q_s - n), q_s) / lead));

    std::vector<double> roots;
    const int kPoints = 4000;
    const double lo = 1e-9;
    double prev_a = lo, prev_q = q(lo);
    for (int i = 1; i <= kPoints; ++i) {
        double a = lo * std::pow(hi / lo, static_cast<double>(i) / kPoints);
        double qa = q(a);
        if (prev_q == 0.0) roots.push_back(prev_a);
        if (prev_q * qa < 0.0) {
            double l = prev_a, r = a;
            for (int it = 0; it < 200; ++it) {
                double m = 0.5 * (l + r);
                if (q(l) * q(m) <= 0.0)
                    r = m;
                else
                    l = m;
                if (r - l <= rel_tol * std::max(1.0, r)) break;
            }
            roots.push_back(0.5 * (l + r));
        }
        prev_a = a;
        prev_q = qa;
    }
    return roots;
}

// Number of sign changes of the cubic over a dense log-spaced grid on
// (lo, hi); log spacing keeps the resolution adequate across the many
// orders of magnitude the coefficient scales span.
inline int cubic_sign_scan(const std::array<double, 4>& c, double hi, int points = 20000) {
    auto f = [&](double x) { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; };
    const double lo = 1e-9;
    int changes = 0;
    double prev = f(lo);
    for (int i = 1; i <= points; ++i) {
        double x = lo * std::pow(hi / lo, static_cast<double>(i) / points);
        double v = f(x);
        if (prev * v < 0.0) ++changes;
        if (v != 0.0) prev = v;
    }
    return changes;
}

// Central-difference Jacobian of the library vector field.
inline std::array<std::array<double, 11>, 11> fd_jacobian(const ModelParams& p,
                                                          const sitepi::FullState& s) {
    std::array<std::array<double, 11>, 11> J{};
    auto y0 = s.to_array();
    for (std::size_t j = 0; j < 11; ++j) {
        double h = 1e-6 * std::max(1.0, std::abs(y0[j]));
        auto yp = y0, ym = y0;
        yp[j] += h;
        ym[j] -= h;
        std::array<double, 12> fp{}, fm{};
        sitepi::rhs_reduced(p, yp.data(), fp.data(), true);
        sitepi::rhs_reduced(p, ym.data(), fm.data(), true);
        for (std::size_t i = 0; i < 11; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

// Uniform draw over the published parameter ranges (N_h fixed); the female
// mortality ordering is restored by swapping when violated.
inline ModelParams random_draw(std::mt19937_64& rng) {
    ModelParams p = ModelParams::baseline();
    for (const auto& r : sitepi::default_ranges()) {
        std::uniform_real_distribution<double> d(r.lo, r.hi);
        sitepi::set_param(p, r.name, d(rng));
    }
    if (p.mu_I < p.mu_S) std::swap(p.mu_I, p.mu_S);
    return p;
}

inline bool within_pct(double value, double target, double pct) {
    return std::abs(value - target) <= std::abs(target) * pct / 100.0;
}

} // namespace oracles

#endif
