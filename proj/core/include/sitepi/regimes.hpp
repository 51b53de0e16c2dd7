#ifndef SITEPI_REGIMES_HPP
#define SITEPI_REGIMES_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "sitepi/equilibria.hpp"
#include "sitepi/thresholds.hpp"

namespace sitepi {

/// Stable identifiers for the qualitative-outcome rows. Downstream tooling
/// matches on these, the text is advisory.
enum class Observation {
    WildNotViable,            ///< N <= 1: trivial disease-free state globally stable
    ReleasesUseless,          ///< R0^2 <= 1: no epidemiological risk to control
    SterileFemalesBlockControl, ///< eps_F*lambda_tot >= lambda_F_crit: risk stays above 1
    EliminationMassive,       ///< massive male releases: trivial state globally stable
    FailsSubcritical,         ///< R0^2 too high for sub-critical releases
    BistableAtCritical,       ///< knife-edge release: trivial and double-root state both stable
    BistableControlled,       ///< sub-critical window: trivial and wild DFE both stable, risk < 1
    FailsBelowStar,           ///< releases below the control window
    ControlledHighFertility,  ///< N eps > 1: massive releases keep risk below 1
    FailsHighFertility,       ///< N eps > 1: releases cannot bring risk below 1
};
const char* to_string(Observation o);

struct RegimeReport {
    // echoed inputs
    double N = 0, N_eps = 0, r0_sq = 0, r0_tdfe_sq = 0;
    double eps_F_lambda = 0, male_release = 0;
    double lambda_F_crit = 0;
    ThresholdBundle thresholds;
    R0SitSquared r0_sit;
    // verdicts
    bool elimination_feasible = false;   ///< wild elimination reachable by large releases
    bool epi_risk_controllable = false;  ///< current releases bring the reproduction number below 1
    std::vector<Tag> stable_equilibria;  ///< predicted locally stable states
    Observation observation{};
    std::string observation_text;
};

/// Decision logic over the threshold comparisons. Stability entries follow
/// the predicted regime; equilibria_with_stability() recomputes them from
/// spectra, so a disagreement between the two is a checkable defect.
RegimeReport classify(const ModelParams& p);

using Spectrum = std::vector<std::complex<double>>;

/// Analytic Jacobian of the (releases-active) reduced system at `state`.
std::array<std::array<double, kReducedDim>, kReducedDim>
jacobian(const ModelParams& p, const FullState& state);

/// Eigenvalues of the Jacobian at `state`.
Spectrum jacobian_spectrum(const ModelParams& p, const FullState& state);

double max_real_part(const Spectrum& s);

/// LAS / unstable from the spectrum; non-hyperbolic when the leading real
/// part sits within 1e-9 of zero.
Stability stability_from_spectrum(const Spectrum& s);

/// Labels every equilibrium by its computed spectrum.
std::vector<LabeledEquilibrium> equilibria_with_stability(const ModelParams& p);

} // namespace sitepi

#endif
