#ifndef SITEPI_THRESHOLDS_HPP
#define SITEPI_THRESHOLDS_HPP

#include <optional>
#include <string>

#include "sitepi/params.hpp"

namespace sitepi {

/// Which disease-free state carries the reproduction number of the
/// controlled system.
enum class R0Branch { TDFE, DFE2, DFEDiamond, DFEDagger, DFESharp };
const char* to_string(R0Branch b);

/// Split of the controlled-system reproduction number into the wild
/// contribution (surviving fertile population) and the sterile-female
/// contribution (releases), total = wild + sterile.
struct R0SitSquared {
    double total = 0.0;
    double wild = 0.0;
    double sterile = 0.0;
    R0Branch branch = R0Branch::TDFE;
};

/// Release-size and reproduction-number thresholds that split the
/// qualitative regimes; which fields are present depends on whether
/// N*eps is below, at, or above 1.
struct RegimeThresholds {
    std::optional<double> r0_NElt1_sq;       ///< risk-control cutoff on R0^2 (N eps <= 1)
    std::optional<double> lambda_M_star;     ///< male release above which small releases still work
    std::optional<double> r0_NEgt1_sq;       ///< risk-control cutoff on R0^2 (N eps > 1)
    std::optional<double> lambda_M_crit_sharp;    ///< below it, risk control impossible (N eps > 1)
    std::optional<double> lambda_M_NEgt1_crit;    ///< male release needed for control (N eps > 1)
};

/// Closed-form release thresholds governing endemic-state existence when
/// infected females die faster than susceptible ones.
struct EndemicThresholds {
    std::optional<double> lambda_M_EE_crit;  ///< male-release bound for twin endemic states (N eps <= 1)
    std::optional<double> lambda_EE_crit_1;  ///< total-release sign change of the cubic's constant term
    std::optional<double> lambda_tot_crit_2; ///< sign change of the quadratic coefficient
    std::optional<double> lambda_tot_crit_3; ///< sign change of the linear coefficient
    bool degenerate_equal_mortality = false; ///< mu_I == mu_S: use the equal-mortality branch
    bool unbounded_female_thresholds = false;///< eps_F == 0: thresholds 1 and 3 are infinite
};

/// Critical sterile-male release rate: above it the wild population is
/// driven out (requires N*eps < 1; at N*eps == 1 the degenerate value
/// applies). Throws BranchError when N*eps > 1 (elimination unreachable).
double lambda_M_crit(const ModelParams& p);

/// Degenerate critical male release at N*eps == 1: (mu_MS/Q)(N-1).
double lambda_M_sharp_crit(const ModelParams& p);

/// Critical sterile-female release rate: above it the epidemiological risk
/// cannot be brought below 1 whatever the male releases. Returns 0 when
/// N <= 1 (no wild population to protect).
double lambda_F_crit(const ModelParams& p);

/// Basic reproduction number (squared) of the uncontrolled system.
/// Returns 0 when N <= 1.
double r0_squared(const ModelParams& p);

/// Reproduction number (squared) at the trivial disease-free state;
/// equals eps_F*lambda_tot / lambda_F_crit.
double r0_tdfe_squared(const ModelParams& p);

/// Reproduction number (squared) of the release-controlled system, split
/// into wild and sterile parts, with the branch that produced it.
R0SitSquared r0_sit_squared(const ModelParams& p);

RegimeThresholds regime_thresholds(const ModelParams& p);

EndemicThresholds endemic_thresholds(const ModelParams& p);

/// Everything above in one record (the `thresholds` CLI output).
struct ThresholdBundle {
    double N = 0.0;
    double N_eps = 0.0;
    double r0_sq = 0.0;
    double r0_tdfe_sq = 0.0;
    std::optional<double> lambda_M_crit;
    std::optional<double> lambda_M_sharp_crit;
    double lambda_F_crit = 0.0;
    R0SitSquared r0_sit;
    RegimeThresholds regime;
    EndemicThresholds endemic;
    std::string note;  ///< warnings (e.g. degenerate branches)
};

ThresholdBundle compute_thresholds(const ModelParams& p);

} // namespace sitepi

#endif
