#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "brlab/family.hpp"
#include "brlab/profiles.hpp"

namespace brlab::cli {

inline constexpr int kCacheFormat = 1;

// SHA-256 of `data` as lowercase hex
std::string sha256_hex(const std::string& data);

struct CacheStats {
  int hits = 0;
  int misses = 0;
  int rebuilt = 0;  // entries rejected by the header check
  int stored = 0;
  int compared = 0;
  double max_rel_diff = 0;  // recomputed against cached values, in no-cache mode
};

// File-backed cache of psi tables and family member tables, norms and peaks.
// Each entry is one file: a text header with the content key and the SHA-256 of the
// payload, then the binary payload. Entries failing the header check are rebuilt.
// With `enabled` false nothing is read for reuse or written; existing entries are only
// compared against the recomputed values.
class ProfileCache {
 public:
  ProfileCache(std::string dir, bool enabled, std::ostream& log);

  std::shared_ptr<const SchwartzProfile> psi(PsiConvention conv);
  // a member seeded from its cache entry when one is present
  FamilyMember member(const Params& params, std::shared_ptr<const SchwartzProfile> psi);
  // persists the member's computed state; in no-cache mode compares it with the stored entry
  void store(const FamilyMember& m);
  // writes manifest.json listing the entries touched in this run
  void write_manifest() const;

  const CacheStats& stats() const { return stats_; }
  const std::string& dir() const { return dir_; }
  bool enabled() const { return enabled_; }

  static std::string member_key(const FamilyMember& m);
  static std::string psi_key(const SchwartzProfile& p);

 private:
  struct Entry {
    std::string kind, label, file;
  };
  std::string path_for(const std::string& key) const;
  // payload of a valid entry, or empty when absent or rejected
  bool read_entry(const std::string& key, const std::string& kind, std::string& payload, bool quiet = false);
  void write_entry(const std::string& key, const std::string& kind, const std::string& label,
                   const std::string& payload);
  void note(const std::string& key, const std::string& kind, const std::string& label);
  void compare(double a, double b);

  std::string dir_;
  bool enabled_;
  std::ostream& log_;
  mutable std::mutex mu_;
  CacheStats stats_;
  std::map<std::string, Entry> touched_;
  std::map<int, std::shared_ptr<const SchwartzProfile>> psi_;
};

}  // namespace brlab::cli
