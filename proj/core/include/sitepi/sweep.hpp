#ifndef SITEPI_SWEEP_HPP
#define SITEPI_SWEEP_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sitepi/dynamics.hpp"
#include "sitepi/params.hpp"

namespace sitepi {

enum class SweepMetric { REffAtTDenv, R0SitSq, FinalA, TimeToReffBelow };
const char* to_string(SweepMetric m);
SweepMetric sweep_metric_from_string(const std::string& s);

/// One sweep axis: a model parameter or a schedule field
/// (t_sit_start, t_denv, i0, horizon), scanned linearly over [min, max].
struct AxisSpec {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
};

struct SweepConfig {
    ModelParams base;
    Schedule schedule;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    SweepMetric metric = SweepMetric::REffAtTDenv;
    double threshold = 0.5;   ///< for TimeToReffBelow
    unsigned workers = 0;

    SweepConfig();
};

struct SweepResult {
    std::vector<double> axis1;   ///< node values
    std::vector<double> axis2;   ///< empty for 1-D sweeps
    std::vector<double> values;  ///< row-major over (axis1, axis2); NaN marks failed cells
    std::size_t failed_cells = 0;

    double at(std::size_t i1, std::size_t i2 = 0) const;
};

/// Evaluates the metric at every grid node by full simulation (closed form
/// for R0SitSq). Cells run concurrently; assembly is deterministic by cell
/// index. More than 5% failed cells is an error.
SweepResult run_sweep(const SweepConfig& cfg);

/// Flat key-value sweep description. Keys: any model parameter, schedule
/// fields, `metric`, `metric.threshold`, and `axis1.*` / `axis2.*` with
/// `param`, `min`, `max`, `steps`.
SweepConfig parse_sweep_config(std::istream& in, const ModelParams& base);
SweepConfig load_sweep_config_file(const std::string& path, const ModelParams& base);

} // namespace sitepi

#endif
