#include "rbloch_cli/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace rbloch::cli {

void Report::check(std::string name, bool passed, std::string witness) {
  if (passed) witness.clear();
  checks.push_back({std::move(name), passed, std::move(witness)});
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Json Report::to_json(bool include_runtime) const {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["results"] = results;
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    Json cj{{"name", c.name}, {"passed", c.passed}};
    if (!c.witness.empty()) cj["witness"] = c.witness;
    j["checks"].push_back(std::move(cj));
  }
  j["tables"] = Json::array();
  for (const auto& t : tables) j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  j["passed"] = passed();
  if (include_runtime)
    j["runtime"] = {{"timing_ms", timing_ms}, {"cache_hits", cache_hits}, {"cache_misses", cache_misses}};
  return j;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  if (seed) os << "seed: " << *seed << "\n";
  flatten(results, "", os);
  for (const auto& t : tables) {
    os << "table " << t.name << ":\n  ";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "\t" : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
      os << "  ";
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
      os << "\n";
    }
  }
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.witness.empty()) os << ": " << c.witness;
    os << "\n";
  }
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string Report::to_csv() const {
  std::ostringstream os;
  for (const auto& t : tables) {
    os << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& text, std::ostream& console) {
  if (path == "-") {
    console << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace rbloch::cli
