#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace rbloch::cli {

using Json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool passed = false;
  std::string witness;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Everything a subcommand produces. The runtime block (timing, cache
/// traffic) is the only part that may differ between identical runs.
struct Report {
  static constexpr const char* kSchema = "rbloch.report/1";

  std::string command;
  std::optional<std::uint64_t> seed;
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<Table> tables;
  double timing_ms = 0.0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;

  /// The witness is kept only for failed checks.
  void check(std::string name, bool passed, std::string witness = {});
  bool passed() const;

  Json to_json(bool include_runtime = true) const;
  std::string to_text() const;
  /// Every table, each preceded by a "# name" line.
  std::string to_csv() const;
};

/// Writes text to path ("-" is `console`); throws std::runtime_error naming
/// the path on failure.
void write_file(const std::string& path, const std::string& text, std::ostream& console);

}  // namespace rbloch::cli
