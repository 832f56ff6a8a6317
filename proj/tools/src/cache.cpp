#include "rbloch_cli/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace rbloch::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "rbloch-cache 1 ";

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

PresentationCache::PresentationCache(fs::path dir) : dir_(std::move(dir)) {}

PresentationCache::PresentationCache(const PresentationCache& other)
    : dir_(other.dir_), hits_(other.hits_.load()), misses_(other.misses_.load()) {}

PresentationCache PresentationCache::configure(const std::string& dir_flag, bool bypass) {
  if (bypass) return {};
  if (!dir_flag.empty()) return PresentationCache(dir_flag);
  if (const char* env = std::getenv(kEnvVar); env && *env) return PresentationCache(env);
  return {};
}

fs::path PresentationCache::entry_path(const std::string& key) const { return *dir_ / (key + ".rec"); }

std::optional<FPGroup> PresentationCache::get(const std::string& key, const std::vector<std::string>& labels,
                                              const IntMatrix& relations) {
  if (!enabled()) {
    ++misses_;
    return std::nullopt;
  }
  fs::path path = entry_path(key);
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();
  try {
    std::size_t nl = text.find('\n');
    std::string header = text.substr(0, nl);
    std::string body = nl == std::string::npos ? std::string() : text.substr(nl + 1);
    if (header != kMagic + hex(fnv1a(body))) throw std::runtime_error("hash mismatch");
    std::istringstream is(body);
    FPGroup g = read_record(is);
    if (g.labels() != labels || !(g.relations() == relations)) throw std::runtime_error("stale entry");
    ++hits_;
    return g;
  } catch (const std::exception&) {
    std::error_code ec;
    fs::remove(path, ec);
    ++misses_;
    return std::nullopt;
  }
}

void PresentationCache::put(const std::string& key, const FPGroup& group) {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  std::ostringstream body;
  write_record(body, group, true);
  std::string text = kMagic + hex(fnv1a(body.str())) + "\n" + body.str();

  std::random_device rd;
  fs::path tmp = *dir_ / (key + ".tmp." + hex((std::uint64_t{rd()} << 32) ^ rd()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) return;
    f << text;
    if (!f.flush()) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, entry_path(key), ec);
  if (ec) fs::remove(tmp, ec);
}

FPGroup PresentationCache::fetch(const std::string& key, std::vector<std::string> labels, IntMatrix relations) {
  if (auto g = get(key, labels, relations)) return *g;
  FPGroup g(std::move(labels), std::move(relations));
  put(key, g);
  return g;
}

}  // namespace rbloch::cli
