#pragma once

#include <map>
#include <string>
#include <vector>

namespace horobm {

/// One verdict: a measured value compared against a bound at a stated tolerance.
struct CheckLine {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::string experiment;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> measures;
  std::vector<CheckLine> checks;
  double wall_clock_sec = 0.0;

  void check(const std::string& name, double value, double bound, double tolerance, bool pass,
             const std::string& note = "");
  /// pass iff |value - bound| <= tolerance * scale.
  void check_close(const std::string& name, double value, double bound, double tolerance,
                   double scale, const std::string& note = "");
  /// pass iff value >= bound - tolerance * scale.
  void check_at_least(const std::string& name, double value, double bound, double tolerance,
                      double scale, const std::string& note = "");
  bool all_pass() const;
};

/// Byte-deterministic for fixed inputs; wall clock only on request so that
/// reports from identical runs diff clean.
std::string report_to_json(const Report& rep, bool include_wall_clock = false);
std::string report_to_csv(const Report& rep);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace horobm
