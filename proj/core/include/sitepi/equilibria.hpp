#ifndef SITEPI_EQUILIBRIA_HPP
#define SITEPI_EQUILIBRIA_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sitepi/dynamics.hpp"
#include "sitepi/params.hpp"

namespace sitepi {

/// Steady state of the release-phase mosquito system (no virus circulating).
struct EntomoState {
    double A = 0, M = 0, F_WS = 0, S_S = 0;
};

enum class Tag {
    TDFE,        ///< no wild mosquitoes, no disease, released sterile females only
    DFE1,        ///< smaller wild disease-free state (always unstable)
    DFE2,        ///< larger wild disease-free state
    DFEDiamond,  ///< double-root disease-free state at the critical male release
    DFEDagger,   ///< unique wild disease-free state when elimination is unreachable
    DFESharp,    ///< unique wild disease-free state at unit offspring-times-fertility
    WIFE,        ///< wild-insect-free boundary state with circulating virus
    EESit1,      ///< endemic state built on the smaller wild root
    EESit2,      ///< endemic state built on the larger wild root
    EESitStar,   ///< endemic state when the wild root is unique
    EStarWild,   ///< no-control wild equilibrium
};

enum class Stability { LAS, Unstable, NonHyperbolic, Unchecked };

const char* to_string(Tag t);
const char* to_string(Stability s);

struct LabeledEquilibrium {
    FullState state;
    Tag tag;
    double residual_norm = 0.0;
    Stability stability = Stability::Unchecked;
};

struct EntomoEquilibrium {
    EntomoState state;
    Tag tag;              ///< named after the disease-free state it embeds into
    double alpha = 0.0;   ///< sterile-to-wild male ratio at the root (0 at the trivial state)
    double residual_norm = 0.0;
};

/// No-control wild equilibrium (A*, M*, F*_WS); the zero state when N <= 1.
EntomoState wild_equilibrium(const ModelParams& p);

/// All equilibria of the release-phase entomological system: the trivial
/// state plus zero, one or two positive states depending on where the male
/// release rate sits relative to its critical value and on whether
/// N*eps crosses 1. Root count and placement follow the quadratic in the
/// sterile-to-wild male ratio; roots are Newton-polished.
std::vector<EntomoEquilibrium> sit_entomological_equilibria(const ModelParams& p);

/// Embeds the entomological equilibria into full disease-free states
/// (all humans susceptible, no infected compartments).
std::vector<LabeledEquilibrium> disease_free_equilibria(const ModelParams& p);

/// Boundary state with virus circulating through released sterile females
/// only. Exists iff the sterile-female release rate exceeds its critical
/// value (equivalently, the trivial-state reproduction number exceeds 1).
std::optional<LabeledEquilibrium> wife_equilibrium(const ModelParams& p);

/// Endemic equilibria when infected and susceptible females die at the same
/// rate. Requires mu_I == mu_S; throws BranchError otherwise (use
/// endemic_root_classification for the general case).
std::vector<LabeledEquilibrium> endemic_equilibria_equal_mortality(const ModelParams& p);

/// Cubic classification of endemic states for mu_S < mu_I.
struct CubicClassification {
    std::array<double, 4> coeff{};       ///< a3, a2, a1, a0 (descending powers)
    std::string sign_pattern;            ///< e.g. "-++-" (zeros printed as '0')
    std::vector<int> descartes_counts;   ///< admissible positive-root counts
    int positive_root_count = 0;
    std::vector<double> roots;           ///< positive real roots of A, ascending
    std::vector<LabeledEquilibrium> states; ///< reconstructed states for admissible roots
};

/// Evaluates the endemic cubic in A, reports its Descartes sign pattern and
/// the numerically found positive roots, and reconstructs the corresponding
/// states through the equilibrium substitution chain. The reconstruction
/// inherits the chain's reduction of the human infection pressure, so the
/// reported residual_norm is informative rather than solver-tight.
CubicClassification endemic_root_classification(const ModelParams& p);

/// Scaled max-norm of the system right-hand side at `state`:
/// max_i |f_i| / max(1, |x_i|), releases active.
double equilibrium_residual(const ModelParams& p, const FullState& state);

/// Disease-free equilibria, the boundary state when it exists, and the
/// equal-mortality endemic states when mu_I == mu_S. Every state returned
/// here satisfies the equilibrium equations to solver accuracy.
std::vector<LabeledEquilibrium> all_equilibria(const ModelParams& p);

} // namespace sitepi

#endif
