#include "sitepi/sensitivity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/Dense>

namespace sitepi {

const char* to_string(OutputSelector s) {
    switch (s) {
        case OutputSelector::FWildTotal: return "F_wild_total";
        case OutputSelector::SI: return "S_I";
        case OutputSelector::FWI: return "F_WI";
        case OutputSelector::Ih: return "I_h";
    }
    return "?";
}

OutputSelector output_selector_from_string(const std::string& s) {
    if (s == "F_wild_total" || s == "F") return OutputSelector::FWildTotal;
    if (s == "S_I") return OutputSelector::SI;
    if (s == "F_WI") return OutputSelector::FWI;
    if (s == "I_h") return OutputSelector::Ih;
    throw ValidationError("unknown output selector: " + s);
}

SensitivityOptions::SensitivityOptions()
    : ranges(default_ranges()), base(ModelParams::baseline()) {
    schedule.t_sit_start = 0.0;
    schedule.t_denv = 0.0;
    schedule.i0 = 1.0;
    schedule.horizon = window_hi;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SITEPI_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

SampleMatrix lhs_sample(const std::vector<ParamRange>& ranges, std::size_t n,
                        std::uint64_t seed) {
    if (n < 2) throw ValidationError("lhs_sample: n must be >= 2");
    for (const auto& r : ranges)
        if (!(r.lo < r.hi))
            throw ValidationError("lhs_sample: invalid range for " + r.name);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t k = ranges.size();

    SampleMatrix X(n, std::vector<double>(k));
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < k; ++j) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < n; ++i) {
            double u = (static_cast<double>(perm[i]) + unif(rng)) / static_cast<double>(n);
            X[i][j] = ranges[j].lo + u * (ranges[j].hi - ranges[j].lo);
        }
    }
    return X;
}

namespace {

// Average ranks, ties share the mean rank.
std::vector<double> rank_column(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
        i = j + 1;
    }
    return r;
}

// Partial rank correlation of each input with the output, controlling for
// the remaining inputs: correlate the residuals of the two rank columns
// after regressing both on the other rank columns. All inner products come
// from one Gram matrix of the centred ranks. Returns false when the
// controlling block is numerically singular (collinear inputs).
bool partial_rank_correlations(const std::vector<std::vector<double>>& cols,
                               std::vector<double>& out) {
    const std::size_t m = cols.size();  // k inputs + 1 output
    const std::size_t k = m - 1;
    const std::size_t n = cols[0].size();

    Eigen::MatrixXd Rk(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto r = rank_column(cols[j]);
        double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
        for (std::size_t i = 0; i < n; ++i) Rk(i, j) = r[i] - mean;
    }
    const Eigen::MatrixXd G = Rk.transpose() * Rk;

    out.resize(k);
    const std::size_t ky = k;  // output column
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::size_t> others;
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) others.push_back(t);
        const std::size_t q = others.size();

        double sxx = G(j, j), syy = G(ky, ky), sxy = G(j, ky);
        if (q > 0) {
            Eigen::MatrixXd Gzz(q, q);
            Eigen::VectorXd gx(q), gy(q);
            for (std::size_t a = 0; a < q; ++a) {
                gx(a) = G(others[a], j);
                gy(a) = G(others[a], ky);
                for (std::size_t b = 0; b < q; ++b) Gzz(a, b) = G(others[a], others[b]);
            }
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Gzz);
            if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
            Eigen::VectorXd ax = ldlt.solve(gx);
            Eigen::VectorXd ay = ldlt.solve(gy);
            sxx -= gx.dot(ax);
            syy -= gy.dot(ay);
            sxy -= gx.dot(ay);
        }
        if (!(sxx > 0.0) || !(syy > 0.0)) return false;
        out[j] = sxy / std::sqrt(sxx * syy);
    }
    return true;
}

} // namespace

PrccResult prcc(const SampleMatrix& inputs, const std::vector<double>& output,
                std::size_t n_boot, double level, std::uint64_t seed) {
    const std::size_t n = inputs.size();
    if (n == 0) throw ValidationError("prcc: empty sample");
    const std::size_t k = inputs[0].size();
    if (output.size() != n) throw ValidationError("prcc: output length mismatch");
    if (n <= k + 2) throw ValidationError("prcc: need n > k + 2 samples");

    // column-major copy, output last
    std::vector<std::vector<double>> cols(k + 1, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) cols[j][i] = inputs[i][j];
        cols[k][i] = output[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
        auto [mn, mx] = std::minmax_element(cols[j].begin(), cols[j].end());
        if (*mn == *mx)
            throw ValidationError("prcc: constant input column " + std::to_string(j));
    }
    // name pairwise-collinear inputs up front; deeper rank defects are
    // caught by the controlling-block factorisation below
    for (std::size_t a = 0; a < k; ++a) {
        auto ra = rank_column(cols[a]);
        for (std::size_t b = a + 1; b < k; ++b) {
            auto rb = rank_column(cols[b]);
            double num = 0, da = 0, db = 0;
            double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
            double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
            for (std::size_t i = 0; i < n; ++i) {
                num += (ra[i] - ma) * (rb[i] - mb);
                da += (ra[i] - ma) * (ra[i] - ma);
                db += (rb[i] - mb) * (rb[i] - mb);
            }
            if (std::abs(num) >= std::sqrt(da * db) * (1.0 - 1e-12))
                throw ValidationError("prcc: collinear input columns " + std::to_string(a) +
                                      " and " + std::to_string(b));
        }
    }

    PrccResult res;
    if (!partial_rank_correlations(cols, res.prcc))
        throw ValidationError("prcc: rank-deficient controlling matrix (collinear input columns)");

    // percentile bootstrap over row resamples
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::vector<double>> boots(k);
    std::vector<std::vector<double>> bcols(k + 1, std::vector<double>(n));
    std::vector<double> bcoef;
    for (std::size_t b = 0; b < n_boot; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t s = pick(rng);
            for (std::size_t j = 0; j <= k; ++j) bcols[j][i] = cols[j][s];
        }
        if (!partial_rank_correlations(bcols, bcoef)) continue;
        for (std::size_t j = 0; j < k; ++j) boots[j].push_back(bcoef[j]);
    }
    auto percentile = [](std::vector<double>& v, double q) {
        std::sort(v.begin(), v.end());
        if (v.empty()) return 0.0;
        double pos = q * static_cast<double>(v.size() - 1);
        std::size_t lo = static_cast<std::size_t>(pos);
        std::size_t hi = std::min(lo + 1, v.size() - 1);
        double w = pos - static_cast<double>(lo);
        return (1.0 - w) * v[lo] + w * v[hi];
    };
    res.ci_lo.resize(k);
    res.ci_hi.resize(k);
    const double tail = 0.5 * (1.0 - level);
    for (std::size_t j = 0; j < k; ++j) {
        if (boots[j].empty()) {
            res.ci_lo[j] = res.ci_hi[j] = res.prcc[j];
        } else {
            res.ci_lo[j] = percentile(boots[j], tail);
            res.ci_hi[j] = percentile(boots[j], 1.0 - tail);
        }
    }
    return res;
}

namespace {

double window_mean(const Trajectory& tr, OutputSelector sel, double lo, double hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.times[i] < lo - 1e-9 || tr.times[i] > hi + 1e-9) continue;
        const auto& y = tr.states[i];
        double v = 0.0;
        switch (sel) {
            case OutputSelector::FWildTotal: v = y[iF_WS] + y[iF_WE] + y[iF_WI]; break;
            case OutputSelector::SI: v = y[iS_I]; break;
            case OutputSelector::FWI: v = y[iF_WI]; break;
            case OutputSelector::Ih: v = y[iI_h]; break;
        }
        sum += v;
        ++count;
    }
    if (count == 0) throw ValidationError("sensitivity window contains no samples");
    return sum / static_cast<double>(count);
}

} // namespace

SensitivityReport sensitivity_run(const SensitivityOptions& opts) {
    if (!(opts.window_lo < opts.window_hi) || opts.window_hi > opts.schedule.horizon + 1e-9)
        throw ValidationError("sensitivity window must lie within the horizon");

    std::vector<ParamRange> varying, pinned;
    for (const auto& r : opts.ranges) {
        if (r.lo < r.hi)
            varying.push_back(r);
        else if (r.lo == r.hi)
            pinned.push_back(r);
        else
            throw ValidationError("invalid range for " + r.name);
    }
    if (varying.empty()) throw ValidationError("no varying parameters");

    SampleMatrix X = lhs_sample(varying, opts.n, opts.seed);

    std::vector<double> y(opts.n, 0.0);
    std::vector<char> failed(opts.n, 0);
    std::atomic<std::size_t> next{0};
    const unsigned workers = resolve_workers(opts.workers);

    auto run_row = [&](std::size_t i) {
        ModelParams p = opts.base;
        for (const auto& r : pinned) set_param(p, r.name, r.lo);
        for (std::size_t j = 0; j < varying.size(); ++j) set_param(p, varying[j].name, X[i][j]);
        if (p.mu_I < p.mu_S) std::swap(p.mu_I, p.mu_S);  // keep the mortality ordering
        if (opts.link_mu_A2_to_capacity)
            p.mu_A2 = std::max(
                (p.gamma + p.mu_A1) * basic_offspring_number(p) / (3.0 * p.N_h), 1e-12);
        p = apply_mechanical_control(p);
        if (!validate(p).empty()) {
            failed[i] = 1;
            return;
        }
        try {
            Trajectory tr = integrate(p, opts.schedule, default_initial_conditions(p, opts.schedule));
            y[i] = window_mean(tr, opts.selector, opts.window_lo, opts.window_hi);
        } catch (const IntegrationError&) {
            failed[i] = 1;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < opts.n; i = next.fetch_add(1)) run_row(i);
        });
    for (auto& t : pool) t.join();

    std::size_t nfail = 0;
    for (char f : failed) nfail += f;
    if (nfail * 100 > opts.n)
        throw ValidationError("more than 1% of simulations failed (" +
                              std::to_string(nfail) + "/" + std::to_string(opts.n) + ")");

    SampleMatrix Xok;
    std::vector<double> yok;
    for (std::size_t i = 0; i < opts.n; ++i) {
        if (failed[i]) continue;
        Xok.push_back(X[i]);
        yok.push_back(y[i]);
    }

    PrccResult pr = prcc(Xok, yok, opts.n_boot, opts.level, opts.seed + 1);

    SensitivityReport rep;
    for (std::size_t j = 0; j < varying.size(); ++j)
        rep.entries.push_back({varying[j].name, pr.prcc[j], pr.ci_lo[j], pr.ci_hi[j]});
    for (const auto& r : pinned) rep.entries.push_back({r.name, 0.0, 0.0, 0.0});
    std::stable_sort(rep.entries.begin(), rep.entries.end(),
                     [](const PrccEntry& a, const PrccEntry& b) { return a.prcc < b.prcc; });
    rep.n = yok.size();
    rep.n_boot = opts.n_boot;
    rep.level = opts.level;
    rep.seed = opts.seed;
    rep.window_lo = opts.window_lo;
    rep.window_hi = opts.window_hi;
    rep.output_variable = to_string(opts.selector);
    rep.failed_rows = nfail;
    return rep;
}

} // namespace sitepi
