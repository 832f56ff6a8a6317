#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rbloch_cli/cache.hpp"
#include "rbloch_cli/commands.hpp"
#include "rbloch_cli/report.hpp"

namespace fs = std::filesystem;
using rbloch::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rbloch-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("pb report") {
  auto r = call({"pb", "--q", "5", "--json", "-", "--no-cache", "--quiet"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "rbloch.report/1");
  CHECK(j["passed"] == true);
  const auto& f = j["results"]["pre_bloch"][0];
  CHECK(f["group"]["order"] == 6);
  CHECK(f["group"]["invariant_factors"] == nlohmann::json::array({6}));
  CHECK(f["odd_part"]["description"] == "Z/3");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(call({"pb", "--q", "4"}).code == 2);
  CHECK(call({"pb", "--q", "5", "--frobnicate"}).code == 2);
  CHECK(call({"nosuch"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"cheb", "--l", "4", "--bound", "10"}).code == 2);
  auto r = call({"pb", "--q", "5", "--no-cache", "--json", "/nonexistent-dir/x/report.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("/nonexistent-dir/x/report.json") != std::string::npos);
}

TEST_CASE("csv table for several fields") {
  auto r = call({"pb", "--q", "5,7,9,13", "--csv", "-", "--no-cache", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("q,order,odd_part") != std::string::npos);
  for (const char* row : {"5,6,3", "7,8,1", "9,10,5", "13,14,7"}) CHECK(r.out.find(row) != std::string::npos);
}

TEST_CASE("json is deterministic without runtime data") {
  std::vector<std::string> args{"suite", "--q-list", "5,7", "--trials", "20", "--seed", "3",
                                "--json", "-", "--no-runtime", "--no-cache", "--quiet"};
  auto a = call(args);
  auto b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  args.insert(args.end(), {"--jobs", "1"});
  auto serial = nlohmann::json::parse(call(args).out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["seed"] == 3);
  CHECK_FALSE(j.contains("runtime"));
  j.erase("command");
  serial.erase("command");
  CHECK(j == serial);
}

TEST_CASE("text and json agree on checks") {
  auto t = call({"predict-kernel", "--q", "5", "--no-cache"});
  auto j = nlohmann::json::parse(call({"predict-kernel", "--q", "5", "--no-cache", "--json", "-", "--quiet"}).out);
  CHECK(t.code == 0);
  CHECK(t.out.find("Z/3") != std::string::npos);
  for (const auto& c : j["checks"]) {
    std::string name = c["name"];
    CHECK(t.out.find("PASS " + name) != std::string::npos);
  }
  CHECK(t.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("cheb lists primes") {
  auto r = call({"cheb", "--l", "3", "--bound", "30", "--json", "-", "--quiet"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["chebotarev"]["primes"] == nlohmann::json::array({2, 5, 11, 17, 23, 29}));
}

TEST_CASE("presentation cache") {
  TempDir dir;
  std::string d = dir.path.string();
  auto first = nlohmann::json::parse(call({"pb", "--q", "25", "--cache-dir", d, "--json", "-", "--quiet"}).out);
  CHECK(first["runtime"]["cache_misses"] == 1);
  CHECK(first["runtime"]["cache_hits"] == 0);
  auto second = nlohmann::json::parse(call({"pb", "--q", "25", "--cache-dir", d, "--json", "-", "--quiet"}).out);
  CHECK(second["runtime"]["cache_hits"] == 1);
  first.erase("runtime");
  second.erase("runtime");
  CHECK(first == second);

  fs::path entry;
  for (const auto& e : fs::directory_iterator(dir.path)) entry = e.path();
  REQUIRE_FALSE(entry.empty());
  auto text = slurp(entry);
  text[text.size() / 2] = text[text.size() / 2] == '1' ? '2' : '1';
  std::ofstream(entry) << text;
  auto third = nlohmann::json::parse(call({"pb", "--q", "25", "--cache-dir", d, "--json", "-", "--quiet"}).out);
  CHECK(third["runtime"]["cache_misses"] == 1);
  third.erase("runtime");
  CHECK(third == first);
  auto fourth = nlohmann::json::parse(call({"pb", "--q", "25", "--cache-dir", d, "--json", "-", "--quiet"}).out);
  CHECK(fourth["runtime"]["cache_hits"] == 1);

  auto bypass = nlohmann::json::parse(call({"pb", "--q", "25", "--cache-dir", d, "--no-cache", "--json", "-", "--quiet"}).out);
  CHECK(bypass["runtime"]["cache_hits"] == 0);
  CHECK(bypass["runtime"]["cache_misses"] == 1);
}

TEST_CASE("cache api") {
  TempDir dir;
  rbloch::cli::PresentationCache cache(dir.path);
  auto g = rbloch::FPGroup::from_invariants(rbloch::IntVector{rbloch::Int(6)});
  CHECK_FALSE(cache.get("k", g.labels(), g.relations()).has_value());
  cache.put("k", g);
  auto back = cache.get("k", g.labels(), g.relations());
  REQUIRE(back.has_value());
  CHECK(back->describe() == "Z/6");
  CHECK_FALSE(cache.get("k", {"other"}, g.relations()).has_value());
  CHECK_FALSE(fs::exists(cache.entry_path("k")));
  CHECK(cache.hits() == 1);
  CHECK(cache.misses() == 2);
  rbloch::cli::PresentationCache off;
  CHECK_FALSE(off.enabled());
  CHECK(rbloch::cli::fnv1a("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("empty report is valid json") {
  rbloch::cli::Report r;
  auto j = nlohmann::json::parse(r.to_json(false).dump());
  CHECK(j["schema"] == "rbloch.report/1");
  CHECK(j["passed"] == true);
  CHECK(j["checks"].empty());
}

TEST_CASE("specialize input file") {
  TempDir dir;
  auto in = dir.path / "xi.txt";
  std::ofstream(in) << "field F5(t)\nphi mod2\nplaces t, t-1\n# comment\n[t]\n";
  auto r = call({"specialize", "--in", in.string(), "--json", "-", "--quiet"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["specialize"]["elements"][0]["components"].size() == 2);
  auto bad = dir.path / "bad.txt";
  std::ofstream(bad) << "field F5(t)\nphi mod2\n[t\n";
  auto e = call({"specialize", "--in", bad.string()});
  CHECK(e.code == 2);
  CHECK(e.err.find("bad.txt:3") != std::string::npos);
  CHECK(call({"specialize", "--in", (dir.path / "missing.txt").string()}).code == 2);
}
