#ifndef SITEPI_DYNAMICS_HPP
#define SITEPI_DYNAMICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "sitepi/params.hpp"

namespace sitepi {

/// Compartment order used by every state vector in the library.
/// Index 11 (M_S) only exists when simulating the non-reduced system.
enum StateIndex : std::size_t {
    iS_h = 0, iI_h, iR_h, iA, iM, iF_WS, iF_WE, iF_WI, iS_S, iS_E, iS_I, iM_S,
    kReducedDim = 11,
    kFullDim = 12,
};

/// One state of the human-mosquito system.
struct FullState {
    double S_h = 0, I_h = 0, R_h = 0;
    double A = 0, M = 0, F_WS = 0, F_WE = 0, F_WI = 0;
    double S_S = 0, S_E = 0, S_I = 0;
    std::optional<double> M_S;  ///< sterile males, only tracked by the non-reduced system

    std::array<double, kFullDim> to_array() const;
    static FullState from_array(const double* y, std::size_t dim);
};

/// Release and virus-introduction timing for a simulation run.
struct Schedule {
    double t_sit_start = 0.0;  ///< releases are 0 before, constant lambda_tot after
    double t_denv = 0.0;       ///< I_h jumps by i0 (and S_h drops by i0) at this time
    double i0 = 1.0;           ///< infected humans introduced at t_denv
    double horizon = 1000.0;   ///< days simulated
    bool use_reduced = true;   ///< quasi-static sterile males vs dM_S/dt tracked
};

/// Fraction of emerging females that mate with a fertile male, given wild
/// males M and sterile stock M_S. With no males at all the fraction is 0
/// (nothing to mate with); with no sterile stock it is 1.
double fertile_mating_fraction(const ModelParams& p, double M, double M_S);

/// Time derivative of the reduced (11-component) system. `sit_active`
/// selects whether releases are running; when false the sterile stock and
/// both release terms are zero.
void rhs_reduced(const ModelParams& p, const double* y, double* dydt, bool sit_active);

/// Time derivative of the non-reduced (12-component) system with dM_S/dt.
void rhs_full12(const ModelParams& p, const double* y, double* dydt, bool sit_active);

/// Effective reproduction number evaluated on the susceptible female
/// abundance of `state`. Coincides with the basic reproduction number at the
/// wild equilibrium and with its trivial-equilibrium analogue at that point.
double effective_reproduction_number(const ModelParams& p, const FullState& state);
double effective_reproduction_number(const ModelParams& p, double F_WS, double S_S);

/// Humans all susceptible, wild compartments at the no-control equilibrium,
/// sterile compartments empty.
FullState default_initial_conditions(const ModelParams& p, const Schedule& s);

struct Trajectory {
    std::vector<double> times;                       ///< strictly increasing, days
    std::vector<std::array<double, kFullDim>> states;///< one row per time
    std::vector<double> r_eff;                       ///< effective reproduction number per row
    std::size_t dim = kReducedDim;                   ///< 11 or 12 depending on Schedule::use_reduced

    FullState state_at(std::size_t i) const;
    const std::array<double, kFullDim>& back() const { return states.back(); }
};

struct IntegrateOptions {
    double rtol = 1e-8;
    double atol_scale = 1e-10;  ///< absolute tolerance is atol_scale * N_h
    double dt_out = 1.0;        ///< output sampling interval, days
};

/// Adaptive embedded Runge-Kutta 4(5) integration of the scheduled system.
/// Integration stops and restarts exactly at t_sit_start and t_denv (where
/// the I_h jump is applied). Steps that would push a component below -atol
/// are rejected; sub-atol undershoots are clamped to zero on output only.
/// Throws IntegrationError on step-size underflow.
Trajectory integrate(const ModelParams& p, const Schedule& s, const FullState& ic,
                     const IntegrateOptions& opts = {});

} // namespace sitepi

#endif
