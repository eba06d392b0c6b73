#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace bpchain {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Content key: schema version, the command inputs and the generator scheme,
/// flattened into one canonical string.
struct CacheKey {
  int schema = 1;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> inputs;

  std::string canonical() const {
    std::string s = "schema=" + std::to_string(schema) + ";kind=" + kind;
    for (const auto& [k, v] : inputs) s += ";" + k + "=" + v;
    return s;
  }
  std::string digest() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical());
    return os.str();
  }
};

/// Directory of payload files named by key digest. Each file starts with the
/// canonical key on its own line, so a digest collision reads as a miss.
/// IO problems never surface as results: reads miss and writes are skipped,
/// each with a warning.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// --cache-dir, then BPCHAIN_CACHE_DIR, then $HOME/.cache/bpchain.
  static std::optional<std::filesystem::path> default_directory() {
    if (const char* env = std::getenv("BPCHAIN_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    if (const char* home = std::getenv("HOME"); home && *home)
      return std::filesystem::path(home) / ".cache" / "bpchain";
    return std::nullopt;
  }

  const std::filesystem::path& directory() const { return dir_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::filesystem::path path_for(const CacheKey& key) const { return dir_ / (key.kind + "-" + key.digest() + ".json"); }

  std::optional<std::string> get(const CacheKey& key) {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header) || header != key.canonical()) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    if (!in.good() && !in.eof()) {
      warnings_.push_back("cache read failed for " + path_for(key).string());
      return std::nullopt;
    }
    return body.str();
  }

  bool put(const CacheKey& key, const std::string& payload) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return warn("cannot create cache directory " + dir_.string() + ": " + ec.message());
    std::random_device rd;
    const auto target = path_for(key);
    const auto tmp = target.string() + ".tmp" + std::to_string(rd());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << key.canonical() << '\n' << payload;
      out.flush();
      if (!out) {
        std::filesystem::remove(tmp, ec);
        return warn("cache write failed for " + target.string());
      }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      return warn("cache rename failed for " + target.string());
    }
    return true;
  }

  void discard(const CacheKey& key) {
    std::error_code ec;
    std::filesystem::remove(path_for(key), ec);
  }

  void warn_external(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  bool warn(std::string w) {
    warnings_.push_back(std::move(w));
    return false;
  }

  std::filesystem::path dir_;
  std::vector<std::string> warnings_;
};

}  // namespace bpchain
