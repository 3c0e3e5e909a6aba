#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tubescan/config.hpp"
#include "tubescan/elliptic.hpp"

namespace tubescan {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDiagnostic = 2;
inline constexpr int kExitResource = 3;

// Commands write their report to `out` and return an exit code. Input and
// resource errors propagate as InputError / ResourceError.
int cmd_height(const CurveOverQ& E, const std::string& point, double tol, std::ostream& out);
int cmd_reduce(const std::string& matrix, std::ostream& out);
int cmd_enumerate(long g, long r, long M, bool canonical_only, long budget, std::ostream& out);
// kv report to `out`; with out_path also writes out_path (kv) and out_path.json.
int cmd_bounds(const RunConfig& c, const std::optional<std::string>& out_path, std::ostream& out);

// Line-delimited JSON: one header, one record per (point, morphism), one summary.
std::string scan_report(const RunConfig& c, const std::vector<PointVector>& points);
// Points come from points_override, else c.points_path. Without out_path the
// report goes to `out`; with it, only the summary line does.
int cmd_scan(const RunConfig& c, const std::optional<std::string>& points_override,
             const std::optional<std::string>& out_path, std::ostream& out);
int cmd_check(std::ostream& out);

}  // namespace tubescan
