#include "sitepi/regimes.hpp"

#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace sitepi {

const char* to_string(Observation o) {
    switch (o) {
        case Observation::WildNotViable: return "wild_not_viable";
        case Observation::ReleasesUseless: return "releases_useless";
        case Observation::SterileFemalesBlockControl: return "sterile_females_block_control";
        case Observation::EliminationMassive: return "elimination_massive_releases";
        case Observation::FailsSubcritical: return "fails_subcritical_releases";
        case Observation::BistableAtCritical: return "bistable_at_critical_release";
        case Observation::BistableControlled: return "bistable_controlled";
        case Observation::FailsBelowStar: return "fails_below_control_window";
        case Observation::ControlledHighFertility: return "controlled_high_fertility";
        case Observation::FailsHighFertility: return "fails_high_fertility";
    }
    return "?";
}

namespace {

const char* observation_text(Observation o) {
    switch (o) {
        case Observation::WildNotViable:
            return "wild population not viable; trivial disease-free state is globally stable";
        case Observation::ReleasesUseless:
            return "no epidemiological risk without control; releases are unnecessary";
        case Observation::SterileFemalesBlockControl:
            return "sterile-female release rate too high; risk stays above 1 for any male release";
        case Observation::EliminationMassive:
            return "massive male releases eliminate the wild population; trivial state globally stable";
        case Observation::FailsSubcritical:
            return "sub-critical releases cannot bring the reproduction number below 1";
        case Observation::BistableAtCritical:
            return "knife-edge release: trivial and double-root disease-free states both stable, risk below 1";
        case Observation::BistableControlled:
            return "trivial and wild disease-free states both stable, risk below 1";
        case Observation::FailsBelowStar:
            return "releases below the control window; risk stays above 1";
        case Observation::ControlledHighFertility:
            return "residual fertility blocks elimination, but releases keep the risk below 1";
        case Observation::FailsHighFertility:
            return "residual fertility blocks elimination and releases cannot control the risk";
    }
    return "";
}

} // namespace

RegimeReport classify(const ModelParams& p) {
    RegimeReport rep;
    rep.thresholds = compute_thresholds(p);
    const ThresholdBundle& th = rep.thresholds;
    rep.N = th.N;
    rep.N_eps = th.N_eps;
    rep.r0_sq = th.r0_sq;
    rep.r0_tdfe_sq = th.r0_tdfe_sq;
    rep.lambda_F_crit = th.lambda_F_crit;
    rep.eps_F_lambda = p.eps_F * p.lambda_tot;
    rep.male_release = (1.0 - p.eps_F) * p.lambda_tot;
    rep.r0_sit = th.r0_sit;

    const bool below_unity = rep.N_eps < 1.0 + kBranchTol;
    rep.elimination_feasible = rep.N <= 1.0 || below_unity;
    rep.epi_risk_controllable = th.r0_sit.total < 1.0;

    // Stable states predicted from the computed reproduction numbers: the
    // trivial state needs both a sub-unit fertility product and a sub-unit
    // trivial-state number; the persisting wild disease-free state needs a
    // sub-unit controlled number; the boundary state exists (and attracts)
    // once the female pressure crosses its critical value.
    const double m_s = (1.0 - p.eps_F) * p.lambda_tot;
    if (rep.N <= 1.0) {
        rep.stable_equilibria = {Tag::TDFE};
    } else {
        if (below_unity && rep.r0_tdfe_sq < 1.0 && m_s > 0.0)
            rep.stable_equilibria.push_back(Tag::TDFE);
        if (th.r0_sit.branch != R0Branch::TDFE && th.r0_sit.total < 1.0) {
            switch (th.r0_sit.branch) {
                case R0Branch::DFE2: rep.stable_equilibria.push_back(Tag::DFE2); break;
                case R0Branch::DFEDiamond: rep.stable_equilibria.push_back(Tag::DFEDiamond); break;
                case R0Branch::DFEDagger: rep.stable_equilibria.push_back(Tag::DFEDagger); break;
                case R0Branch::DFESharp: rep.stable_equilibria.push_back(Tag::DFESharp); break;
                default: break;
            }
        }
        if (rep.r0_tdfe_sq > 1.0) rep.stable_equilibria.push_back(Tag::WIFE);
    }

    auto set = [&](Observation o) {
        rep.observation = o;
        rep.observation_text = observation_text(o);
    };

    // Row selection follows the published decision tables; where their
    // thresholds disagree with the computed numbers above, the disagreement
    // is visible in the report rather than patched over.
    if (rep.N <= 1.0) {
        set(Observation::WildNotViable);
        return rep;
    }
    if (rep.r0_sq <= 1.0) {
        set(Observation::ReleasesUseless);
        rep.epi_risk_controllable = true;
        return rep;
    }
    if (rep.eps_F_lambda >= rep.lambda_F_crit * (1.0 - kBranchTol) && rep.eps_F_lambda > 0.0) {
        set(Observation::SterileFemalesBlockControl);
        return rep;
    }

    if (below_unity) {
        const double lamMcrit = th.lambda_M_crit.value_or(th.lambda_M_sharp_crit.value_or(0.0));
        const bool massive = rep.male_release > lamMcrit * (1.0 + kBranchTol);
        const bool at_crit = nearly_equal(rep.male_release, lamMcrit);
        const double cutoff = th.regime.r0_NElt1_sq.value_or(0.0);
        if (massive) {
            set(Observation::EliminationMassive);
        } else if (rep.r0_sq >= cutoff) {
            set(Observation::FailsSubcritical);
        } else if (at_crit) {
            set(Observation::BistableAtCritical);
        } else if (th.regime.lambda_M_star && rep.male_release > *th.regime.lambda_M_star) {
            set(Observation::BistableControlled);
        } else {
            set(Observation::FailsBelowStar);
        }
    } else {
        const double cutoff = th.regime.r0_NEgt1_sq.value_or(0.0);
        double gate = th.regime.lambda_M_crit_sharp.value_or(0.0);
        if (th.regime.lambda_M_NEgt1_crit)
            gate = std::max(gate, *th.regime.lambda_M_NEgt1_crit);
        if (rep.r0_sq < cutoff && rep.male_release > gate) {
            set(Observation::ControlledHighFertility);
        } else {
            set(Observation::FailsHighFertility);
        }
    }
    return rep;
}

std::array<std::array<double, kReducedDim>, kReducedDim>
jacobian(const ModelParams& p, const FullState& s) {
    std::array<std::array<double, kReducedDim>, kReducedDim> J{};
    const double M_S = (1.0 - p.eps_F) * p.lambda_tot / p.mu_MS;
    const double pool = s.M + M_S;

    double frac_fertile, dfertile_dM, frac_sterile, dsterile_dM;
    if (pool > 0.0) {
        frac_fertile = (s.M + p.eps * M_S) / pool;
        dfertile_dM = (1.0 - p.eps) * M_S / (pool * pool);
        frac_sterile = (1.0 - p.eps) * M_S / pool;
        dsterile_dM = -(1.0 - p.eps) * M_S / (pool * pool);
    } else {
        // no sterile stock: the fertile fraction is identically 1
        frac_fertile = 1.0;
        dfertile_dM = 0.0;
        frac_sterile = 0.0;
        dsterile_dM = 0.0;
    }

    const double foi_h = p.B * p.beta_mh * (s.F_WI + s.S_I) / p.N_h;
    const double foi_m = p.B * p.beta_hm * s.I_h / p.N_h;
    const double dfoih = p.B * p.beta_mh / p.N_h;   // per infected mosquito
    const double dfoim = p.B * p.beta_hm / p.N_h;   // per infected human
    const double emergence = p.r * p.gamma * s.A;

    J[iS_h][iS_h] = -foi_h - p.mu_h;
    J[iS_h][iF_WI] = -dfoih * s.S_h;
    J[iS_h][iS_I] = -dfoih * s.S_h;

    J[iI_h][iS_h] = foi_h;
    J[iI_h][iI_h] = -(p.nu_h + p.mu_h);
    J[iI_h][iF_WI] = dfoih * s.S_h;
    J[iI_h][iS_I] = dfoih * s.S_h;

    J[iR_h][iI_h] = p.nu_h;
    J[iR_h][iR_h] = -p.mu_h;

    J[iA][iA] = -(p.gamma + p.mu_A1) - 2.0 * p.mu_A2 * s.A;
    J[iA][iF_WS] = p.phi;
    J[iA][iF_WE] = p.phi;
    J[iA][iF_WI] = p.phi;

    J[iM][iA] = (1.0 - p.r) * p.gamma;
    J[iM][iM] = -p.mu_M;

    J[iF_WS][iA] = frac_fertile * p.r * p.gamma;
    J[iF_WS][iM] = dfertile_dM * emergence;
    J[iF_WS][iI_h] = -dfoim * s.F_WS;
    J[iF_WS][iF_WS] = -foi_m - p.mu_S;

    J[iF_WE][iI_h] = dfoim * s.F_WS;
    J[iF_WE][iF_WS] = foi_m;
    J[iF_WE][iF_WE] = -(p.nu_m + p.mu_S);

    J[iF_WI][iF_WE] = p.nu_m;
    J[iF_WI][iF_WI] = -p.mu_I;

    J[iS_S][iA] = frac_sterile * p.r * p.gamma;
    J[iS_S][iM] = dsterile_dM * emergence;
    J[iS_S][iI_h] = -dfoim * s.S_S;
    J[iS_S][iS_S] = -foi_m - p.mu_S;

    J[iS_E][iI_h] = dfoim * s.S_S;
    J[iS_E][iS_S] = foi_m;
    J[iS_E][iS_E] = -(p.nu_m + p.mu_S);

    J[iS_I][iS_E] = p.nu_m;
    J[iS_I][iS_I] = -p.mu_I;

    return J;
}

Spectrum jacobian_spectrum(const ModelParams& p, const FullState& state) {
    const auto J = jacobian(p, state);
    Eigen::Matrix<double, kReducedDim, kReducedDim> m;
    for (std::size_t i = 0; i < kReducedDim; ++i)
        for (std::size_t j = 0; j < kReducedDim; ++j) m(i, j) = J[i][j];
    Eigen::EigenSolver<decltype(m)> solver(m, /*computeEigenvectors=*/false);
    Spectrum out;
    for (int i = 0; i < m.rows(); ++i) out.push_back(solver.eigenvalues()[i]);
    return out;
}

double max_real_part(const Spectrum& s) {
    double mx = -std::numeric_limits<double>::infinity();
    for (auto z : s) mx = std::max(mx, z.real());
    return mx;
}

Stability stability_from_spectrum(const Spectrum& s) {
    const double mx = max_real_part(s);
    if (std::abs(mx) < 1e-9) return Stability::NonHyperbolic;
    return mx < 0.0 ? Stability::LAS : Stability::Unstable;
}

std::vector<LabeledEquilibrium> equilibria_with_stability(const ModelParams& p) {
    auto eqs = all_equilibria(p);
    for (auto& e : eqs) e.stability = stability_from_spectrum(jacobian_spectrum(p, e.state));
    return eqs;
}

} // namespace sitepi
