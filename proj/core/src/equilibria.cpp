#include "sitepi/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace sitepi {

const char* to_string(Tag t) {
    switch (t) {
        case Tag::TDFE: return "TDFE";
        case Tag::DFE1: return "DFE1";
        case Tag::DFE2: return "DFE2";
        case Tag::DFEDiamond: return "DFE_diamond";
        case Tag::DFEDagger: return "DFE_dagger";
        case Tag::DFESharp: return "DFE_sharp";
        case Tag::WIFE: return "WIFE";
        case Tag::EESit1: return "EE_SIT_1";
        case Tag::EESit2: return "EE_SIT_2";
        case Tag::EESitStar: return "EE_SIT_star";
        case Tag::EStarWild: return "E_star_wild";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::LAS: return "LAS";
        case Stability::Unstable: return "unstable";
        case Stability::NonHyperbolic: return "non-hyperbolic";
        case Stability::Unchecked: return "unchecked";
    }
    return "?";
}

EntomoState wild_equilibrium(const ModelParams& p) {
    EntomoState e;
    double n = basic_offspring_number(p);
    if (n <= 1.0) return e;
    e.A = (p.gamma + p.mu_A1) * (n - 1.0) / p.mu_A2;
    e.M = (1.0 - p.r) * p.gamma * e.A / p.mu_M;
    e.F_WS = p.r * p.gamma * e.A / p.mu_S;
    return e;
}

double equilibrium_residual(const ModelParams& p, const FullState& state) {
    auto y = state.to_array();
    std::array<double, kFullDim> f{};
    rhs_reduced(p, y.data(), f.data(), /*sit_active=*/true);
    double res = 0.0;
    for (std::size_t i = 0; i < kReducedDim; ++i)
        res = std::max(res, std::abs(f[i]) / std::max(1.0, std::abs(y[i])));
    return res;
}

namespace {

// Newton polish of a root of a*x^2 + b*x + c.
double polish_quadratic(double a, double b, double c, double x) {
    for (int it = 0; it < 3; ++it) {
        double fp = 2.0 * a * x + b;
        if (fp == 0.0) break;
        double f = (a * x + b) * x + c;
        x -= f / fp;
    }
    return x;
}

// Emerging-female split between the fertile and sterile pools at steady
// state, given the wild male stock.
EntomoState entomo_from_alpha(const ModelParams& p, double M_S_star, double lam_F,
                              double alpha) {
    EntomoState e;
    e.M = M_S_star / alpha;
    e.A = p.mu_M * e.M / ((1.0 - p.r) * p.gamma);
    e.F_WS = (p.gamma + p.mu_A1 + p.mu_A2 * e.A) * e.A / p.phi;
    e.S_S = (lam_F + (1.0 - p.eps) * M_S_star / (e.M + M_S_star) * p.r * p.gamma * e.A) /
            p.mu_S;
    return e;
}

FullState embed_disease_free(const ModelParams& p, const EntomoState& e) {
    FullState s;
    s.S_h = p.N_h;
    s.A = e.A;
    s.M = e.M;
    s.F_WS = e.F_WS;
    s.S_S = e.S_S;
    return s;
}

} // namespace

std::vector<EntomoEquilibrium> sit_entomological_equilibria(const ModelParams& p) {
    const auto d = derived_quantities(p);
    const double lam_F = p.eps_F * p.lambda_tot;
    std::vector<EntomoEquilibrium> out;

    EntomoEquilibrium trivial;
    trivial.state = EntomoState{0.0, 0.0, 0.0, lam_F / p.mu_S};
    trivial.tag = Tag::TDFE;
    out.push_back(trivial);

    if (d.M_S_star <= 0.0) {
        // no sterile males: the wild equilibrium persists unchanged
        if (d.N > 1.0) {
            EntomoEquilibrium e;
            e.state = wild_equilibrium(p);
            e.state.S_S = lam_F / p.mu_S;
            e.tag = Tag::DFE2;
            out.push_back(e);
        }
    } else {
        const double n_eps = d.N * p.eps;
        // quadratic in alpha = M_S*/M:  (1 - N eps) a^2 + (1 + Q_S - N) a + Q_S = 0
        const double qa = 1.0 - n_eps;
        const double qb = 1.0 + d.Q_S - d.N;
        const double qc = d.Q_S;

        auto push = [&](double alpha, Tag tag) {
            EntomoEquilibrium e;
            e.alpha = alpha;
            e.state = entomo_from_alpha(p, d.M_S_star, lam_F, alpha);
            e.tag = tag;
            out.push_back(e);
        };

        if (nearly_equal(n_eps, 1.0)) {
            if (d.Q_S < (d.N - 1.0) * (1.0 - kBranchTol))
                push(d.Q_S / (d.N - 1.0 - d.Q_S), Tag::DFESharp);
        } else if (n_eps < 1.0) {
            if (d.N > 1.0) {
                double qs1 = std::pow(std::sqrt(d.N * (1.0 - p.eps)) - std::sqrt(1.0 - n_eps), 2);
                if (nearly_equal(d.Q_S, qs1, 1e-12)) {
                    push((d.N - 1.0 - qs1) / (2.0 * qa), Tag::DFEDiamond);
                } else if (d.Q_S < qs1) {
                    double disc = qb * qb - 4.0 * qa * qc;
                    double sq = std::sqrt(std::max(disc, 0.0));
                    // qb < 0 on this branch; larger root first, the other from the product
                    double q = 0.5 * (-qb + sq);
                    double a_plus = polish_quadratic(qa, qb, qc, q / qa);
                    double a_minus = polish_quadratic(qa, qb, qc, qc / q);
                    push(a_plus, Tag::DFE1);   // larger ratio, smaller wild population
                    push(a_minus, Tag::DFE2);
                }
                // Q_S above the double-root value: no positive state
            }
        } else {
            // elimination unreachable: exactly one positive root
            double disc = qb * qb - 4.0 * qa * qc;
            double sq = std::sqrt(disc);
            double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
            double r1 = q / qa, r2 = (q != 0.0) ? qc / q : 0.0;
            double alpha = std::max(r1, r2);
            push(polish_quadratic(qa, qb, qc, alpha), Tag::DFEDagger);
        }
    }

    for (auto& e : out)
        e.residual_norm = equilibrium_residual(p, embed_disease_free(p, e.state));
    return out;
}

std::vector<LabeledEquilibrium> disease_free_equilibria(const ModelParams& p) {
    std::vector<LabeledEquilibrium> out;
    for (const auto& e : sit_entomological_equilibria(p)) {
        LabeledEquilibrium le;
        le.state = embed_disease_free(p, e.state);
        le.tag = e.tag;
        le.residual_norm = e.residual_norm;
        out.push_back(le);
    }
    return out;
}

std::optional<LabeledEquilibrium> wife_equilibrium(const ModelParams& p) {
    const double lam_F = p.eps_F * p.lambda_tot;
    // reproduction number seen from the trivial state
    const double kappa = (p.nu_m / (p.nu_m + p.mu_S)) * (p.B * p.beta_mh / p.mu_I) *
                         (p.B * p.beta_hm / (p.nu_h + p.mu_h));
    const double r0_tdfe = kappa * lam_F / (p.mu_S * p.N_h);
    if (r0_tdfe <= 1.0 + kBranchTol) return std::nullopt;

    const double m = p.B * p.beta_hm * p.mu_h / (p.mu_h + p.nu_h);
    const double x = (p.mu_S + m) / (m + p.mu_S * r0_tdfe);  // S_h fraction, < 1 here

    LabeledEquilibrium le;
    le.tag = Tag::WIFE;
    FullState& s = le.state;
    s.S_h = x * p.N_h;
    s.I_h = p.mu_h * (1.0 - x) * p.N_h / (p.nu_h + p.mu_h);
    s.R_h = p.nu_h * s.I_h / p.mu_h;
    const double foi_m = p.B * p.beta_hm * s.I_h / p.N_h;
    s.S_S = lam_F / (p.mu_S + foi_m);
    s.S_E = foi_m * s.S_S / (p.nu_m + p.mu_S);
    s.S_I = p.nu_m * s.S_E / p.mu_I;
    le.residual_norm = equilibrium_residual(p, s);
    return le;
}

namespace {

// Epidemic pressure threshold on the total susceptible-female recruitment:
// infection persists iff eps_F*lambda_tot + r*gamma*A exceeds this.
double recruitment_threshold(const ModelParams& p) {
    const double kappa = (p.nu_m / (p.nu_m + p.mu_S)) * (p.B * p.beta_mh / p.mu_I) *
                         (p.B * p.beta_hm / (p.nu_h + p.mu_h));
    return p.mu_S * p.N_h / kappa;
}

// Full endemic state from a wild aquatic stock A, assuming equal female
// mortalities. Exact by construction: every compartment follows from the
// steady-state substitution chain, and the infected-human level solves its
// scalar fixed point in closed form.
FullState endemic_state_equal_mortality(const ModelParams& p, double A) {
    const double lam_F = p.eps_F * p.lambda_tot;
    const double M_S_star = (1.0 - p.eps_F) * p.lambda_tot / p.mu_MS;
    const double b = p.B * p.beta_hm;
    const double c = p.B * p.beta_mh;
    const double kappa2 = p.nu_m / (p.mu_S * (p.nu_m + p.mu_S));
    const double W = (lam_F + p.r * p.gamma * A) / p.N_h;

    const double u = p.mu_h * (c * kappa2 * b * W - (p.nu_h + p.mu_h) * p.mu_S) /
                     ((p.nu_h + p.mu_h) * b * (p.mu_h + c * kappa2 * W));

    FullState s;
    s.I_h = u * p.N_h;
    s.S_h = p.N_h - (p.nu_h + p.mu_h) * s.I_h / p.mu_h;
    s.R_h = p.nu_h * s.I_h / p.mu_h;
    const double foi_m = b * u;
    s.A = A;
    s.M = (1.0 - p.r) * p.gamma * A / p.mu_M;
    const double pool = s.M + M_S_star;
    const double frac_fertile = pool > 0.0 ? (s.M + p.eps * M_S_star) / pool : 1.0;
    const double frac_sterile = pool > 0.0 ? (1.0 - p.eps) * M_S_star / pool : 0.0;
    const double emergence = p.r * p.gamma * A;
    s.F_WS = frac_fertile * emergence / (p.mu_S + foi_m);
    s.F_WE = foi_m * s.F_WS / (p.nu_m + p.mu_S);
    s.F_WI = p.nu_m * s.F_WE / p.mu_I;
    s.S_S = (lam_F + frac_sterile * emergence) / (p.mu_S + foi_m);
    s.S_E = foi_m * s.S_S / (p.nu_m + p.mu_S);
    s.S_I = p.nu_m * s.S_E / p.mu_I;
    return s;
}

} // namespace

std::vector<LabeledEquilibrium> endemic_equilibria_equal_mortality(const ModelParams& p) {
    if (!nearly_equal(p.mu_I, p.mu_S))
        throw BranchError("endemic_equilibria_equal_mortality requires mu_I == mu_S; "
                          "use endemic_root_classification instead");
    const double lam_F = p.eps_F * p.lambda_tot;
    const double threshold = recruitment_threshold(p);

    // The wild stock of an endemic state solves the same ratio equation as
    // the disease-free states, so reuse those roots.
    std::vector<std::pair<double, Tag>> candidates;
    for (const auto& e : sit_entomological_equilibria(p)) {
        if (e.state.A <= 0.0) continue;
        Tag t = Tag::EESitStar;
        if (e.tag == Tag::DFE1) t = Tag::EESit1;
        if (e.tag == Tag::DFE2) t = Tag::EESit2;
        candidates.emplace_back(e.state.A, t);
    }

    std::vector<LabeledEquilibrium> out;
    for (auto [A, tag] : candidates) {
        if (lam_F + p.r * p.gamma * A <= threshold * (1.0 + kBranchTol)) continue;
        LabeledEquilibrium le;
        le.state = endemic_state_equal_mortality(p, A);
        le.tag = tag;
        le.residual_norm = equilibrium_residual(p, le.state);
        out.push_back(le);
    }
    return out;
}

namespace {

// Real roots of a3 x^3 + a2 x^2 + a1 x + a0 (a3 != 0), Newton-polished.
std::vector<double> solve_cubic(double a3, double a2, double a1, double a0) {
    const double p2 = a2 / a3, p1 = a1 / a3, p0 = a0 / a3;
    // depressed form t^3 + pt + q with x = t - p2/3
    const double shift = p2 / 3.0;
    const double pcof = p1 - p2 * p2 / 3.0;
    const double qcof = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;

    std::vector<double> roots;
    const double disc = 0.25 * qcof * qcof + pcof * pcof * pcof / 27.0;
    if (disc > 0.0) {
        double sq = std::sqrt(disc);
        double u = std::cbrt(-0.5 * qcof + sq);
        double v = std::cbrt(-0.5 * qcof - sq);
        roots.push_back(u + v - shift);
    } else if (disc == 0.0) {
        if (qcof == 0.0) {
            roots.push_back(-shift);
        } else {
            double u = std::cbrt(-0.5 * qcof);
            roots.push_back(2.0 * u - shift);
            roots.push_back(-u - shift);
        }
    } else {
        double rho = std::sqrt(-pcof * pcof * pcof / 27.0);
        double theta = std::acos(std::clamp(-0.5 * qcof / rho, -1.0, 1.0));
        double mag = 2.0 * std::sqrt(-pcof / 3.0);
        for (int k = 0; k < 3; ++k)
            roots.push_back(mag * std::cos((theta + 2.0 * M_PI * k) / 3.0) - shift);
    }
    for (double& x : roots) {
        for (int it = 0; it < 4; ++it) {
            double f = ((a3 * x + a2) * x + a1) * x + a0;
            double fp = (3.0 * a3 * x + 2.0 * a2) * x + a1;
            if (fp == 0.0) break;
            double dx = f / fp;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

CubicClassification endemic_root_classification(const ModelParams& p) {
    const auto d = derived_quantities(p);
    const double lam_F = p.eps_F * p.lambda_tot;
    const double M_S_star = d.M_S_star;
    const double alpha = d.alpha_epi;
    const double mort_ratio = (1.0 + p.nu_m / p.mu_I) / (1.0 + p.nu_m / p.mu_S);
    const double g1 = p.gamma + p.mu_A1;

    CubicClassification res;
    const double a3 = -(1.0 - p.r) * p.gamma * p.gamma * p.mu_A2 * alpha * p.r;
    const double a2 =
        (1.0 - p.r) * alpha * p.gamma *
        (p.r * p.gamma * g1 * (d.N * mort_ratio - 1.0) -
         p.mu_A2 *
             ((1.0 - p.eps_F) * (p.r / (1.0 - p.r)) * (p.mu_M / p.mu_MS) + p.eps_F) *
             p.lambda_tot);
    const double bracket =
        (alpha * p.mu_M * (1.0 - p.eps_F) * p.r / ((1.0 - p.r) * p.mu_MS)) *
            (1.0 - d.N * p.eps * mort_ratio) +
        alpha * p.eps_F * (1.0 - d.N * mort_ratio);
    const double a1 =
        (1.0 - p.r) * p.gamma * g1 *
        (d.N * p.mu_S * (1.0 - mort_ratio) - bracket * p.lambda_tot -
         (d.Q * (1.0 - p.eps_F) / p.mu_MS) * alpha * p.eps_F * p.lambda_tot * p.lambda_tot);
    const double a0 = p.mu_M * M_S_star * g1 * p.mu_S *
                      (d.N * p.eps * (1.0 - mort_ratio) -
                       (alpha * lam_F / p.mu_S) * (1.0 - d.N * p.eps * mort_ratio));

    res.coeff = {a3, a2, a1, a0};

    int sign_changes = 0;
    int prev = 0;
    for (double c : res.coeff) {
        int sgn = c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
        res.sign_pattern += sgn > 0 ? '+' : (sgn < 0 ? '-' : '0');
        if (sgn != 0) {
            if (prev != 0 && sgn != prev) ++sign_changes;
            prev = sgn;
        }
    }
    for (int k = sign_changes; k >= 0; k -= 2) res.descartes_counts.push_back(k);

    const double scale = std::max({std::abs(a0), std::abs(a1), std::abs(a2), std::abs(a3)});
    if (a3 != 0.0 && scale > 0.0) {
        for (double x : solve_cubic(a3, a2, a1, a0)) {
            if (x > 1e-9) res.roots.push_back(x);
        }
    }
    res.positive_root_count = static_cast<int>(res.roots.size());

    const double b = p.B * p.beta_hm;
    const double c = p.B * p.beta_mh;
    for (std::size_t ri = 0; ri < res.roots.size(); ++ri) {
        const double A = res.roots[ri];
        double pressure = alpha * (lam_F + p.r * p.gamma * A);
        double foi_m = pressure - p.mu_S;
        if (foi_m <= 0.0) continue;  // root does not carry a positive infection level
        LabeledEquilibrium le;
        FullState& s = le.state;
        s.A = A;
        s.M = (1.0 - p.r) * p.gamma * A / p.mu_M;
        s.I_h = foi_m * p.N_h / b;
        const double pool = s.M + M_S_star;
        const double frac_fertile = pool > 0.0 ? (s.M + p.eps * M_S_star) / pool : 1.0;
        const double frac_sterile = pool > 0.0 ? (1.0 - p.eps) * M_S_star / pool : 0.0;
        const double emergence = p.r * p.gamma * A;
        s.F_WS = frac_fertile * emergence / pressure;
        s.F_WE = foi_m * s.F_WS / (p.nu_m + p.mu_S);
        s.F_WI = p.nu_m * s.F_WE / p.mu_I;
        s.S_S = (lam_F + frac_sterile * emergence) / pressure;
        s.S_E = foi_m * s.S_S / (p.nu_m + p.mu_S);
        s.S_I = p.nu_m * s.S_E / p.mu_I;
        s.S_h = p.mu_h * p.N_h / (p.mu_h + c * (s.F_WI + s.S_I) / p.N_h);
        s.R_h = p.nu_h * s.I_h / p.mu_h;
        if (res.roots.size() == 1)
            le.tag = Tag::EESitStar;
        else
            le.tag = ri == 0 ? Tag::EESit1 : (ri == 1 ? Tag::EESit2 : Tag::EESitStar);
        le.residual_norm = equilibrium_residual(p, s);
        res.states.push_back(le);
    }
    return res;
}

std::vector<LabeledEquilibrium> all_equilibria(const ModelParams& p) {
    std::vector<LabeledEquilibrium> out = disease_free_equilibria(p);
    if (auto w = wife_equilibrium(p)) out.push_back(*w);
    if (nearly_equal(p.mu_I, p.mu_S)) {
        auto ee = endemic_equilibria_equal_mortality(p);
        out.insert(out.end(), ee.begin(), ee.end());
    }
    return out;
}

} // namespace sitepi
