#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "casurf/family.hpp"
#include "casurf/grid.hpp"
#include "casurf/immersion.hpp"
#include "casurf/verify.hpp"

namespace casurf {

enum class ExportFormat { Csv5, ObjStereo, JsonReport };

std::string_view to_string(ExportFormat f);
/// "csv5", "obj" (or "obj-stereo"), "json" (or "json-report").
ExportFormat parse_export_format(std::string_view s);

/// Everything a command needs. Keys of set() match the long flag names.
struct RunConfig {
    std::string subcommand;
    std::optional<double> theta;
    std::optional<double> nu1;
    double theta_lo = 0.1;
    double theta_hi = 1.4;
    int theta_count = 3;
    int nu1_count = 5;
    GridSpec grid;
    std::optional<JetScheme> scheme;  // nullopt: per-surface default
    Tolerances tol;
    double fd_step = kDefaultFdStep;
    double metric_step = kDefaultMetricStep;
    std::string out;  // empty: standard output
    std::optional<ExportFormat> format;
    int pole = 4;
    std::optional<TrivialTag> trivial;
    double level = 0.0;
    std::string input;  // csv5 mesh to verify instead of a generated surface
    bool degrees = false;

    /// Parses one value. Throws ParameterError for unknown keys or bad values.
    void set(std::string_view key, std::string_view value);

    /// Converts angles given in degrees and checks the invariants. Idempotent.
    void finalize();

    /// Effective settings in a fixed order, as key=value pairs that set()
    /// accepts back.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Keys accepted by RunConfig::set, in print order.
const std::vector<std::string>& config_keys();

/// Flat key=value lines; blank lines and lines starting with '#' are ignored.
/// Throws ParameterError on a malformed line or an unreadable file.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace casurf
