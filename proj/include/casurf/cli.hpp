#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casurf/config.hpp"
#include "casurf/verify.hpp"

namespace casurf {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline int exit_code(const VerificationReport& r) { return r.overall_pass ? kExitPass : kExitFail; }

/// JSON verification report: tool, version, effective config, provenance,
/// checks and the overall verdict. Deterministic for fixed input.
std::string report_json(const VerificationReport& r, const RunConfig& cfg);

/// One row of a parameter scan or table.
struct ScanRow {
    DerivedConstants constants;
    std::vector<std::pair<std::string, double>> family_max;  // empty for table
    bool pass = true;
};

/// theta samples then nu1 samples over [1, sqrt(1 + cos^2)], endpoints exact.
std::vector<SurfaceParams> scan_parameters(const RunConfig& cfg);

/// Evaluates rows concurrently and returns them in parameter order.
std::vector<ScanRow> run_scan(const RunConfig& cfg, bool verify);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows, bool verify);

/// The command-line tool. Returns the process exit code: 0 pass,
/// 1 verification failure, 2 usage or parameter error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casurf
