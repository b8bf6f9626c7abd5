#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/ensemble.hpp"
#include "qwalk/scaling.hpp"

namespace qwalk::csv {

/// Round-trip (%.17g) formatting, so CSVs are byte-stable across runs.
std::string format_real(double v);
/// Quotes a field if it holds a comma or quote.
std::string quote(std::string_view field);
/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_line(std::string_view line);

inline constexpr const char* kPointsHeader = "T,mean_sigma,stderr,n,master_seed,mode,dist_spec";
inline constexpr const char* kFitHeader = "dist_spec,mode,alpha,intercept,r_squared,n_points";
inline constexpr const char* kLogLogHeader = "ln_T,ln_inv_sigma";

/// Lines already prefixed with "# " are written as-is ahead of the table.
void write_comments(std::ostream& os, std::span<const std::string> comments);

void write_points(std::ostream& os, std::span<const EnsemblePoint> points, std::string_view dist_spec);
void write_fit(std::ostream& os, const ScalingFit& fit, std::string_view dist_spec, DisorderMode mode);
void write_loglog(std::ostream& os, const ScalingFit& fit);

struct PointsTable {
    std::vector<EnsemblePoint> points;
    std::string dist_spec;  // from the first row
};

/// Reads a table written by write_points; '#' lines are skipped.
/// Throws UsageError on malformed rows.
PointsTable read_points(std::istream& is);

}  // namespace qwalk::csv
