#include "horobm/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "horobm/errors.hpp"
#include "json.hpp"

namespace horobm {

void Report::check(const std::string& name, double value, double bound, double tolerance,
                   bool pass, const std::string& note) {
  checks.push_back(CheckLine{name, value, bound, tolerance, pass, note});
}

void Report::check_close(const std::string& name, double value, double bound, double tolerance,
                         double scale, const std::string& note) {
  check(name, value, bound, tolerance, std::abs(value - bound) <= tolerance * scale, note);
}

void Report::check_at_least(const std::string& name, double value, double bound, double tolerance,
                            double scale, const std::string& note) {
  check(name, value, bound, tolerance, value >= bound - tolerance * scale, note);
}

bool Report::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

std::string report_to_json(const Report& rep, bool include_wall_clock) {
  nlohmann::json j;
  j["experiment"] = rep.experiment;
  j["inputs"] = rep.inputs;
  j["measures"] = rep.measures;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"bound", c.bound},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass},
                           {"note", c.note}});
  }
  j["all_pass"] = rep.all_pass();
  if (include_wall_clock) j["wall_clock_sec"] = rep.wall_clock_sec;
  return j.dump(2);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string report_to_csv(const Report& rep) {
  std::ostringstream os;
  os << "kind,name,value,bound,tolerance,pass,note\n";
  for (const auto& [k, v] : rep.measures) {
    os << "measure," << csv_escape(k) << "," << num(v) << ",,,,\n";
  }
  for (const auto& c : rep.checks) {
    os << "check," << csv_escape(c.name) << "," << num(c.value) << "," << num(c.bound) << ","
       << num(c.tolerance) << "," << (c.pass ? "pass" : "fail") << "," << csv_escape(c.note)
       << "\n";
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error("cannot open for writing: " + path);
  f << content;
  if (!f) throw error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace horobm
