#ifndef SITEPI_PARAMS_HPP
#define SITEPI_PARAMS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sitepi/common.hpp"

namespace sitepi {

/// All rates of the SIT-entomological-epidemiological model, in days and
/// individuals. Immutable by convention: operations take a value and return
/// a value. Populations are continuous non-negative reals.
struct ModelParams {
    // mosquito life cycle
    double phi;    ///< eggs hatching per female per day
    double gamma;  ///< maturation rate, aquatic stage to adult (1/day)
    double mu_A1;  ///< natural aquatic-stage death rate (1/day)
    double mu_A2;  ///< density-dependent aquatic death rate (1/day/individual)
    double r;      ///< female fraction at emergence, 0 < r < 1
    double mu_M;   ///< wild male death rate (1/day)
    double mu_MS;  ///< sterile male death rate (1/day)
    double mu_S;   ///< susceptible/exposed female death rate (1/day)
    double mu_I;   ///< infected female death rate (1/day), >= mu_S

    // virus transmission
    double nu_m;     ///< extrinsic incubation rate in the vector (1/day)
    double B;        ///< bites per mosquito per day
    double beta_mh;  ///< transmission probability mosquito -> human
    double beta_hm;  ///< transmission probability human -> mosquito
    double mu_h;     ///< human death rate (1/day)
    double nu_h;     ///< human recovery rate (1/day)
    double N_h;      ///< human population size (constant)

    // control knobs
    double lambda_tot;  ///< total sterile release rate, individuals/day
    double eps_F;       ///< sterile-female fraction of releases, [0,1]
    double eps;         ///< residual male fertility, [0,1)
    double p_mc;        ///< breeding-site removal fraction, [0,1)

    /// Simulation baseline: mean temperature 25 C, N_h = 20000, no control.
    /// mu_A2 is tied to the larval carrying capacity K = 3 N_h through
    /// mu_A2 = (gamma + mu_A1) N / K, which keeps the published threshold
    /// values reproducible to well under a percent.
    static ModelParams baseline();
};

/// Scalar building blocks reused by every threshold and equilibrium formula.
struct DerivedQuantities {
    double N;         ///< basic offspring number
    double Q;         ///< mu_A2 mu_M / ((gamma+mu_A1)(1-r) gamma)
    double M_S_star;  ///< sterile male standing stock (1-eps_F) lambda_tot / mu_MS
    double Q_S;       ///< Q * M_S_star
    double alpha_epi; ///< (nu_m/mu_I)(B beta_mh/(nu_h+mu_h))(B beta_hm/(nu_m+mu_S))/N_h^2
    double K;         ///< effective larval carrying capacity (gamma+mu_A1) N / mu_A2
};

/// Admissible interval for one parameter, used by the sensitivity module.
struct ParamRange {
    std::string name;
    double lo;
    double hi;
};

/// N = r gamma phi / (mu_S (gamma + mu_A1)). The population persists iff N > 1.
double basic_offspring_number(const ModelParams& p);

DerivedQuantities derived_quantities(const ModelParams& p);

/// Returns every violated invariant, one message per offending field.
/// An empty list means the parameter set is valid.
std::vector<std::string> validate(const ModelParams& p);

/// Throws ValidationError listing all violations.
void validate_or_throw(const ModelParams& p);

/// Breeding-site removal shrinks the carrying capacity by p_mc, which scales
/// mu_A2 by 1/(1-p_mc). Applied exactly once: the returned copy has p_mc = 0.
ModelParams apply_mechanical_control(const ModelParams& p);

/// Published admissible ranges (daily mean temperature 15-30 C) for the
/// parameters the sensitivity analysis varies.
const std::vector<ParamRange>& default_ranges();

/// Assigns `value` to the parameter named `key`; unknown keys throw
/// ValidationError. Keys match the struct field names (e.g. "eps_F").
void set_param(ModelParams& p, const std::string& key, double value);

double get_param(const ModelParams& p, const std::string& key);

/// All assignable parameter names, in canonical order.
const std::vector<std::string>& param_names();

/// Parses a flat "name = value" config ('#' starts a comment). Entries are
/// applied on top of `base`. Unknown keys are errors.
ModelParams load_config(std::istream& in, const ModelParams& base);
ModelParams load_config_file(const std::string& path, const ModelParams& base);

} // namespace sitepi

#endif
