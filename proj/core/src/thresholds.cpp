#include "sitepi/thresholds.hpp"

#include <cmath>

#include "sitepi/equilibria.hpp"

namespace sitepi {

const char* to_string(R0Branch b) {
    switch (b) {
        case R0Branch::TDFE: return "TDFE";
        case R0Branch::DFE2: return "DFE2";
        case R0Branch::DFEDiamond: return "DFE_diamond";
        case R0Branch::DFEDagger: return "DFE_dagger";
        case R0Branch::DFESharp: return "DFE_sharp";
    }
    return "?";
}

namespace {

// (nu_m/(nu_m+mu_S)) (B beta_mh/mu_I) (B beta_hm/(nu_h+mu_h))
double epi_factor(const ModelParams& p) {
    return (p.nu_m / (p.nu_m + p.mu_S)) * (p.B * p.beta_mh / p.mu_I) *
           (p.B * p.beta_hm / (p.nu_h + p.mu_h));
}

} // namespace

double lambda_M_sharp_crit(const ModelParams& p) {
    const auto d = derived_quantities(p);
    return p.mu_MS / d.Q * (d.N - 1.0);
}

double lambda_M_crit(const ModelParams& p) {
    const auto d = derived_quantities(p);
    const double n_eps = d.N * p.eps;
    if (nearly_equal(n_eps, 1.0)) return lambda_M_sharp_crit(p);
    if (n_eps > 1.0)
        throw BranchError("lambda_M_crit: elimination unreachable (N*eps > 1)");
    const double root = std::sqrt(d.N * (1.0 - p.eps)) - std::sqrt(1.0 - n_eps);
    return p.mu_MS / d.Q * root * root;
}

double lambda_F_crit(const ModelParams& p) {
    const double n = basic_offspring_number(p);
    if (n <= 1.0) return 0.0;  // no wild population to protect
    return p.r * p.gamma * (p.gamma + p.mu_A1) * (n - 1.0) / (p.mu_A2 * r0_squared(p));
}

double r0_squared(const ModelParams& p) {
    const auto e = wild_equilibrium(p);
    if (e.F_WS <= 0.0) return 0.0;
    return epi_factor(p) * e.F_WS / p.N_h;
}

double r0_tdfe_squared(const ModelParams& p) {
    return epi_factor(p) * p.eps_F * p.lambda_tot / (p.mu_S * p.N_h);
}

R0SitSquared r0_sit_squared(const ModelParams& p) {
    R0SitSquared out;
    out.sterile = r0_tdfe_squared(p);

    const auto d = derived_quantities(p);
    const double n = d.N;
    double A_x = 0.0;
    R0Branch branch = R0Branch::TDFE;
    if (n > 1.0) {
        // wild residual population at the meaningful disease-free state
        for (const auto& e : sit_entomological_equilibria(p)) {
            switch (e.tag) {
                case Tag::DFE2: A_x = e.state.A; branch = R0Branch::DFE2; break;
                case Tag::DFEDiamond: A_x = e.state.A; branch = R0Branch::DFEDiamond; break;
                case Tag::DFEDagger: A_x = e.state.A; branch = R0Branch::DFEDagger; break;
                case Tag::DFESharp: A_x = e.state.A; branch = R0Branch::DFESharp; break;
                default: break;
            }
        }
        const double A_star = (p.gamma + p.mu_A1) * (n - 1.0) / p.mu_A2;
        out.wild = r0_squared(p) * A_x / A_star;
    }
    out.branch = branch;
    out.total = out.wild + out.sterile;
    return out;
}

RegimeThresholds regime_thresholds(const ModelParams& p) {
    RegimeThresholds out;
    const auto d = derived_quantities(p);
    const double n = d.N;
    if (n <= 1.0) return out;

    const double n_eps = n * p.eps;
    const double lamF = p.eps_F * p.lambda_tot;
    const double f = r0_tdfe_squared(p);  // = eps_F lambda_tot / lambda_F_crit
    const double r0sq = r0_squared(p);
    const double lamMs_over_Q = p.mu_MS / d.Q;

    if (n_eps < 1.0 - kBranchTol) {
        // Risk-control cutoff at the knife-edge release. The published
        // closed form carries a gamma^2 normalisation of the female-release
        // term; we keep it to reproduce the published threshold values.
        const double term = lamF * p.mu_A2 / (p.r * p.gamma * p.gamma);
        const double surd = std::sqrt((1.0 - p.eps) * n / (1.0 - n_eps));
        out.r0_NElt1_sq = (n - 1.0) / (term + surd - 1.0);

        const double r04 = r0sq * r0sq;
        const double one_f = 1.0 - f;
        out.lambda_M_star =
            lamMs_over_Q * (n - 1.0) *
            (1.0 - (r04 * (1.0 - n_eps) + (n - 1.0) * one_f * one_f) /
                       (r04 * (1.0 - n_eps) + r0sq * (n - 1.0) * one_f));
    } else if (nearly_equal(n_eps, 1.0)) {
        // limit of both adjacent branches
        out.r0_NElt1_sq = 0.0;
        out.lambda_M_star = lamMs_over_Q * (n - 1.0) * (1.0 - (1.0 - f) / r0sq);
    } else {
        const double one_f = 1.0 - f;
        const double r0_above = (n - 1.0) / (n_eps - 1.0) * one_f;
        out.r0_NEgt1_sq = r0_above;
        out.lambda_M_crit_sharp =
            lamMs_over_Q * (n - 1.0) * (1.0 - 2.0 * one_f / r0sq);
        if (r0sq < r0_above)
            out.lambda_M_NEgt1_crit = lamMs_over_Q * (n - 1.0) *
                                      (1.0 - one_f / r0sq) / (1.0 - r0sq / r0_above);
    }
    return out;
}

EndemicThresholds endemic_thresholds(const ModelParams& p) {
    EndemicThresholds out;
    const auto d = derived_quantities(p);
    const double n_eps = d.N * p.eps;

    if (n_eps <= 1.0 + kBranchTol) {
        const double root = std::sqrt(d.N + (1.0 - n_eps)) - std::sqrt(std::max(0.0, 1.0 - n_eps));
        out.lambda_M_EE_crit = p.mu_MS / d.Q * root * root;
    }

    if (nearly_equal(p.mu_I, p.mu_S)) {
        out.degenerate_equal_mortality = true;
        return out;
    }

    const double mort_ratio = (1.0 + p.nu_m / p.mu_I) / (1.0 + p.nu_m / p.mu_S);  // < 1
    const double alpha = d.alpha_epi;
    const double g1 = p.gamma + p.mu_A1;

    if (d.N * mort_ratio > 1.0)
        out.lambda_tot_crit_2 =
            p.r * p.gamma * g1 * (d.N * mort_ratio - 1.0) /
            (p.mu_A2 * ((1.0 - p.eps_F) * (p.r / (1.0 - p.r)) * (p.mu_M / p.mu_MS) + p.eps_F));

    if (p.eps_F <= 0.0) {
        out.unbounded_female_thresholds = true;  // thresholds 1 and 3 diverge
        return out;
    }

    const double denom1 = 1.0 - n_eps * mort_ratio;
    if (denom1 > 0.0)
        out.lambda_EE_crit_1 =
            p.mu_S / (p.eps_F * alpha) * (n_eps * (1.0 - mort_ratio)) / denom1;
    // otherwise the constant coefficient never changes sign: threshold absent

    const double bracket =
        (alpha * p.mu_M * (1.0 - p.eps_F) * p.r / ((1.0 - p.r) * p.mu_MS)) *
            (1.0 - n_eps * mort_ratio) +
        alpha * p.eps_F * (1.0 - d.N * mort_ratio);
    const double lead = d.Q * (1.0 - p.eps_F) / p.mu_MS * alpha * p.eps_F;
    const double disc = bracket * bracket + 4.0 * lead * d.N * p.mu_S * (1.0 - mort_ratio);
    out.lambda_tot_crit_3 = (std::sqrt(disc) + bracket) / (2.0 * lead);
    return out;
}

ThresholdBundle compute_thresholds(const ModelParams& p) {
    ThresholdBundle b;
    const auto d = derived_quantities(p);
    b.N = d.N;
    b.N_eps = d.N * p.eps;
    b.r0_sq = r0_squared(p);
    b.r0_tdfe_sq = r0_tdfe_squared(p);
    b.lambda_F_crit = lambda_F_crit(p);
    if (d.N <= 1.0) b.note = "wild population not viable (N <= 1)";
    if (d.N > 1.0) {
        b.lambda_M_sharp_crit = lambda_M_sharp_crit(p);
        if (b.N_eps <= 1.0 + kBranchTol) b.lambda_M_crit = lambda_M_crit(p);
    }
    b.r0_sit = r0_sit_squared(p);
    b.regime = regime_thresholds(p);
    b.endemic = endemic_thresholds(p);
    return b;
}

} // namespace sitepi
