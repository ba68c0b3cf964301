#pragma once

// Persistent cache of exact counts.  Plain text, one record per line,
// `m,s,n,t,count` after a one-line header; keys are stored in canonical
// orientation under the transpose symmetry.  The file is advisory-locked
// on open (single client per cache file).

#include <sys/file.h>

#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "tpvol/bigint.hpp"
#include "tpvol/counting.hpp"
#include "tpvol/ehrhart.hpp"
#include "tpvol/margins.hpp"

namespace tpvol {

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheCorruptionError : public CacheError {
 public:
  using CacheError::CacheError;
};

class CacheContradictionError : public CacheError {
 public:
  using CacheError::CacheError;
};

struct CacheKey {
  long long m = 0, s = 0, n = 0, t = 0;
  auto operator<=>(const CacheKey&) const = default;
};

class CountCache {
 public:
  static constexpr const char* kHeader = "m,s,n,t,count";

  CountCache() = default;  // in-memory only

  explicit CountCache(const std::string& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "a+");
    if (!file_) throw CacheError("cannot open cache file: " + path);
    if (flock(fileno(file_), LOCK_EX | LOCK_NB) != 0) {
      std::fclose(file_);
      file_ = nullptr;
      throw CacheError("cache file is locked by another process: " + path);
    }
    load();
  }

  ~CountCache() {
    if (file_) std::fclose(file_);  // releases the lock
  }

  CountCache(const CountCache&) = delete;
  CountCache& operator=(const CountCache&) = delete;

  static CacheKey canonical_key(long long m, long long s, long long n, long long t) {
    if (std::pair(m, s) <= std::pair(n, t)) return {m, s, n, t};
    return {n, t, m, s};
  }

  std::optional<BigInt> lookup(long long m, long long s, long long n, long long t) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = entries_.find(canonical_key(m, s, n, t));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  // Storing an existing key with an equal value is a no-op; a different
  // value is a corruption signal.
  void store(long long m, long long s, long long n, long long t, const BigInt& count) {
    if (count < 0) throw std::invalid_argument("counts are non-negative");
    std::lock_guard<std::mutex> lock(mutex_);
    const CacheKey key = canonical_key(m, s, n, t);
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
      if (it->second == count) return;
      throw CacheContradictionError("cache contradiction");
    }
    entries_.emplace(key, count);
    if (file_) {
      std::fprintf(file_, "%lld,%lld,%lld,%lld,%s\n", key.m, key.s, key.n, key.t,
                   count.str().c_str());
      std::fflush(file_);
    }
  }

  size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
  }

  const std::string& path() const { return path_; }

 private:
  void load() {
    std::string content;
    std::rewind(file_);
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, file_)) > 0) content.append(buf, got);
    if (content.empty()) {
      std::fprintf(file_, "%s\n", kHeader);
      std::fflush(file_);
      return;
    }

    size_t pos = 0;
    long long lineno = 0;
    while (pos < content.size()) {
      size_t end = content.find('\n', pos);
      if (end == std::string::npos) end = content.size();
      const std::string line = content.substr(pos, end - pos);
      pos = end + 1;
      ++lineno;
      if (lineno == 1) {
        if (line != kHeader) corrupt(lineno, "bad header");
        continue;
      }
      if (line.empty()) continue;
      parse_record(line, lineno);
    }
  }

  [[noreturn]] void corrupt(long long lineno, const std::string& reason) const {
    throw CacheCorruptionError("cache line " + std::to_string(lineno) + ": " + reason);
  }

  void parse_record(const std::string& line, long long lineno) {
    long long fields[4];
    size_t pos = 0;
    for (int f = 0; f < 4; ++f) {
      const size_t comma = line.find(',', pos);
      if (comma == std::string::npos) corrupt(lineno, "expected 5 fields");
      const std::string part = line.substr(pos, comma - pos);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        corrupt(lineno, "bad integer field");
      try {
        fields[f] = std::stoll(part);
      } catch (const std::exception&) {
        corrupt(lineno, "bad integer field");
      }
      pos = comma + 1;
    }
    const std::string digits = line.substr(pos);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      corrupt(lineno, "bad count field");
    const long long m = fields[0], s = fields[1], n = fields[2], t = fields[3];
    if (m < 1 || n < 1 || s < 0 || t < 0 || m * s != n * t) corrupt(lineno, "invalid margins");
    const CacheKey key = canonical_key(m, s, n, t);
    const BigInt count(digits);
    const auto it = entries_.find(key);
    if (it != entries_.end()) {
      if (it->second != count) corrupt(lineno, "cache contradiction");
      return;  // duplicate record with an equal value
    }
    entries_.emplace(key, count);
  }

  std::map<CacheKey, BigInt> entries_;
  mutable std::mutex mutex_;
  std::FILE* file_ = nullptr;
  std::string path_;
};

// Counting hook that consults the cache first and records fresh results.
inline CountFn cached_counter(CountCache* cache, const CountOptions& options = {}) {
  return [cache, options](const MarginSpec& spec) -> BigInt {
    if (cache) {
      if (auto hit = cache->lookup(spec.m(), spec.s(), spec.n(), spec.t())) return *hit;
    }
    BigInt value = count_constant_margins(spec, options);
    if (cache) cache->store(spec.m(), spec.s(), spec.n(), spec.t(), value);
    return value;
  };
}

}  // namespace tpvol
