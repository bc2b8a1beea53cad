#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vexl/verify.hpp"

namespace vexl {

/// Renders probe rows as CSV with the fixed column set
///
///   trial,probe,lhs,rhs,margin,r_star,pass,tolerance,seed
///
/// followed by one summary row: trial = "summary", probe = the suite name,
/// lhs = passed rows, rhs = total rows, margin = finding count, r_star
/// empty, pass = whether every row passed, then the given tolerance and
/// master seed. Doubles print with 17 significant digits and the output is
/// byte-identical across runs for identical inputs.
std::string render_report_csv(const std::vector<ProbeReport>& rows,
                              const std::string& suite, double tolerance,
                              std::uint64_t master_seed);

/// Writes the rendered CSV through a temporary plus rename, so the
/// destination either keeps its old content or holds the complete report.
void write_report_file(const std::vector<ProbeReport>& rows,
                       const std::string& suite, double tolerance,
                       std::uint64_t master_seed, const std::string& path);

}  // namespace vexl
