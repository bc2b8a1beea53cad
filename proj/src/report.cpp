#include "vexl/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <string>

#include "vexl/errors.hpp"

namespace vexl {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* text(bool b) { return b ? "true" : "false"; }

void append_row(std::string& out, const ProbeReport& row) {
  out += std::to_string(row.trial);
  out += ',';
  out += row.probe;
  out += ',';
  out += fmt17(row.lhs);
  out += ',';
  out += fmt17(row.rhs);
  out += ',';
  out += fmt17(row.margin);
  out += ',';
  if (row.r_star) out += fmt17(*row.r_star);
  out += ',';
  out += text(row.pass);
  out += ',';
  out += fmt17(row.tolerance);
  out += ',';
  out += std::to_string(row.seed);
  out += '\n';
}

}  // namespace

std::string render_report_csv(const std::vector<ProbeReport>& rows,
                              const std::string& suite, double tolerance,
                              std::uint64_t master_seed) {
  std::string out = "trial,probe,lhs,rhs,margin,r_star,pass,tolerance,seed\n";
  std::size_t passed = 0;
  std::size_t findings = 0;
  for (const ProbeReport& row : rows) {
    append_row(out, row);
    passed += row.pass ? 1 : 0;
    findings += row.finding ? 1 : 0;
  }
  out += "summary,";
  out += suite;
  out += ',';
  out += std::to_string(passed);
  out += ',';
  out += std::to_string(rows.size());
  out += ',';
  out += std::to_string(findings);
  out += ",,";
  out += text(passed == rows.size());
  out += ',';
  out += fmt17(tolerance);
  out += ',';
  out += std::to_string(master_seed);
  out += '\n';
  return out;
}

void write_report_file(const std::vector<ProbeReport>& rows,
                       const std::string& suite, double tolerance,
                       std::uint64_t master_seed, const std::string& path) {
  const std::string body = render_report_csv(rows, suite, tolerance, master_seed);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("report file: cannot open \"" + tmp + "\" for writing");
    }
    out << body;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error("report file: write failure on \"" + tmp + "\"");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("report file: cannot move \"" + tmp + "\" into place at \"" +
                path + "\"");
  }
}

}  // namespace vexl
