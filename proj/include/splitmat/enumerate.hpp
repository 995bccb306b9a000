#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "splitmat/canonical.hpp"
#include "splitmat/catalog.hpp"
#include "splitmat/io.hpp"
#include "splitmat/matroid.hpp"
#include "splitmat/minor.hpp"
#include "splitmat/split.hpp"

namespace splitmat {

namespace detail {

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) across jobs threads. Results must be written
// to per-index slots so the outcome is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  jobs = resolve_jobs(jobs);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> threads;
  int spawn = std::min<std::size_t>(jobs, count);
  threads.reserve(spawn);
  for (int t = 0; t < spawn; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
}

struct Mask128 {
  std::uint64_t w0 = 0, w1 = 0;
  bool test(int i) const { return ((i < 64 ? w0 >> i : w1 >> (i - 64)) & 1u) != 0; }
  void set(int i) { (i < 64 ? w0 : w1) |= std::uint64_t{1} << (i % 64); }
  Mask128 operator|(Mask128 o) const { return {w0 | o.w0, w1 | o.w1}; }
  Mask128 operator&(Mask128 o) const { return {w0 & o.w0, w1 & o.w1}; }
  Mask128 andnot(Mask128 o) const { return {w0 & ~o.w0, w1 & ~o.w1}; }
  bool any() const { return (w0 | w1) != 0; }
  friend bool operator==(Mask128, Mask128) = default;
};

// Ways of attaching one new element at the same rank, encoded by the set of
// hyperplanes whose span will absorb it. Valid sets are exactly those closed
// under modular pairs: when two chosen hyperplanes meet in corank 2, every
// hyperplane through the intersection is forced in.
class ExtensionEnumerator {
 public:
  explicit ExtensionEnumerator(const Matroid& m) : m_(m), tables_(m) {
    const mask_t ground = m.ground_mask();
    const int hyper_rank = m.rank() - 1;
    if (hyper_rank >= 0) {
      for (mask_t s = 0; s < (mask_t{1} << m.n()); ++s)
        if (tables_.rank[s] == hyper_rank && tables_.is_flat(s, ground))
          hyperplanes_.push_back(s);
    }
    const int hc = static_cast<int>(hyperplanes_.size());
    for (int i = 0; i < hc; ++i)
      for (int j = i + 1; j < hc; ++j) {
        mask_t meet = hyperplanes_[i] & hyperplanes_[j];
        if (m.rank() < 2 || tables_.rank[meet] != m.rank() - 2) continue;
        Mask128 forced;
        for (int k = 0; k < hc; ++k)
          if ((meet & ~hyperplanes_[k]) == 0) forced.set(k);
        pairs_.push_back({i, j, forced});
      }
    if (m.rank() > 0) {
      std::unordered_map<mask_t, int> index;
      for (int i = 0; i < hc; ++i) index[hyperplanes_[i]] = i;
      for_each_subset_of_card(m.n(), m.rank() - 1, [&](mask_t s) {
        if (tables_.rank[s] != m.rank() - 1) return;
        corank1_.push_back({s, index.at(tables_.closure(s, ground))});
      });
    }
  }

  // All labeled extensions by a non-coloop element n (loops included).
  std::vector<Matroid> run() {
    std::vector<Matroid> out;
    Mask128 in, out_set;
    descend(0, in, out_set, out);
    return out;
  }

 private:
  void emit(const Mask128& in, std::vector<Matroid>& out) {
    std::vector<mask_t> bases = m_.bases();
    const mask_t new_bit = bit(m_.n());
    for (const auto& [iset, hyp] : corank1_)
      if (!in.test(hyp)) bases.push_back(iset | new_bit);
    out.emplace_back(detail::Trusted{}, m_.n() + 1, m_.rank(), std::move(bases));
  }

  bool propagate(Mask128& in, const Mask128& out_set) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Pair& p : pairs_) {
        if (!in.test(p.i) || !in.test(p.j)) continue;
        Mask128 missing = p.forced.andnot(in);
        if (!missing.any()) continue;
        if ((missing & out_set).any()) return false;
        in = in | missing;
        changed = true;
      }
    }
    return true;
  }

  void descend(int k, Mask128 in, Mask128 out_set, std::vector<Matroid>& out) {
    const int hc = static_cast<int>(hyperplanes_.size());
    while (k < hc && (in.test(k) || out_set.test(k))) ++k;
    if (k == hc) {
      emit(in, out);
      return;
    }
    Mask128 excl = out_set;
    excl.set(k);
    descend(k + 1, in, excl, out);
    Mask128 incl = in;
    incl.set(k);
    if (propagate(incl, out_set)) descend(k + 1, incl, out_set, out);
  }

  struct Pair {
    int i, j;
    Mask128 forced;
  };

  const Matroid& m_;
  SubsetTables tables_;
  std::vector<mask_t> hyperplanes_;
  std::vector<Pair> pairs_;
  std::vector<std::pair<mask_t, int>> corank1_;  // independent corank-1 sets with closure
};

}  // namespace detail

inline std::vector<Matroid> single_element_extensions(const Matroid& m) {
  if (m.n() >= kMaxGroundSet)
    fail(errc::ground_set_too_large, "cannot extend past " + std::to_string(kMaxGroundSet));
  return detail::ExtensionEnumerator(m).run();
}

// One (n, r) slice of the exhaustive small-matroid catalog. Members are kept
// in canonical form, sorted by canonical key.
struct CatalogShard {
  int n = 0;
  int r = 0;
  std::vector<Matroid> members;
};

struct EnumOptions {
  int jobs = 0;          // 0: all cores
  int hard_cap = 8;      // largest ground set enumeration may reach; 9 for long runs
  std::string cache_dir;  // empty: no shard caching
};

namespace detail {

inline std::vector<std::pair<std::string, Matroid>> keyed_canonical(std::vector<Matroid> raw,
                                                                    int jobs) {
  std::vector<std::pair<std::string, Matroid>> keyed(
      raw.size(), {std::string(), Matroid(Trusted{}, 0, 0, {0})});
  parallel_for(raw.size(), jobs, [&](std::size_t i) {
    Canonical canon = canonicalize(raw[i]);
    keyed[i] = {serialize_key(canon.matroid), std::move(canon.matroid)};
  });
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  return keyed;
}

}  // namespace detail

// All matroids on shard.n + 1 elements at the same rank, up to isomorphism.
// Complete because a matroid without coloops is a non-coloop extension of any
// of its single-element deletions; coloop additions are layered in by the
// full-catalog builder.
inline CatalogShard extend_by_one(const CatalogShard& shard, const EnumOptions& opt = {}) {
  if (shard.n >= opt.hard_cap)
    fail(errc::ground_set_too_large,
         "extension past " + std::to_string(opt.hard_cap) + " elements needs a larger cap");
  std::vector<std::vector<Matroid>> per_member(shard.members.size());
  detail::parallel_for(shard.members.size(), opt.jobs, [&](std::size_t i) {
    per_member[i] = single_element_extensions(shard.members[i]);
  });
  std::vector<Matroid> raw;
  for (std::vector<Matroid>& chunk : per_member)
    for (Matroid& m : chunk) raw.push_back(std::move(m));
  CatalogShard out{shard.n + 1, shard.r, {}};
  for (auto& [key, m] : detail::keyed_canonical(std::move(raw), opt.jobs))
    out.members.push_back(std::move(m));
  return out;
}

// Exhaustive catalog for every ground-set size up to max_n, one shard per
// (n, r), shards ordered by rank.
struct Catalog {
  int max_n = 0;
  std::vector<std::vector<CatalogShard>> by_n;  // index by ground-set size

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const std::vector<CatalogShard>& level : by_n)
      for (const CatalogShard& shard : level)
        for (std::size_t i = 0; i < shard.members.size(); ++i)
          fn(shard, static_cast<int>(i), shard.members[i]);
  }

  long long total(int n) const {
    long long sum = 0;
    if (n >= 0 && n < static_cast<int>(by_n.size()))
      for (const CatalogShard& shard : by_n[n]) sum += static_cast<long long>(shard.members.size());
    return sum;
  }
};

namespace detail {

inline const int kCacheFormatVersion = 1;

inline std::string cache_path(const std::string& dir, int n) {
  return (std::filesystem::path(dir) /
          ("catalog-n" + std::to_string(n) + "-v" + std::to_string(kCacheFormatVersion) + ".txt"))
      .string();
}

inline std::vector<CatalogShard> shards_from_members(int n, std::vector<Matroid> members) {
  std::map<int, CatalogShard> by_rank;
  for (Matroid& m : members) {
    CatalogShard& shard = by_rank[m.rank()];
    shard.n = n;
    shard.r = m.rank();
    shard.members.push_back(std::move(m));
  }
  std::vector<CatalogShard> out;
  for (auto& [r, shard] : by_rank) out.push_back(std::move(shard));
  return out;
}

inline bool load_cached_level(const std::string& dir, int n, std::vector<CatalogShard>& out) {
  std::ifstream in(cache_path(dir, n));
  if (!in) return false;
  std::vector<Matroid> members = read_matroids(in);
  // Members were written canonical and key-sorted per rank; spot-check the
  // ordering so a truncated or edited cache cannot slip through silently.
  out = shards_from_members(n, std::move(members));
  for (const CatalogShard& shard : out) {
    std::string prev;
    for (const Matroid& m : shard.members) {
      std::string key = serialize_key(m);
      if (key <= prev) fail(errc::parse_error, "cache file for n=" + std::to_string(n) + " is not in shard order");
      prev = std::move(key);
    }
  }
  return true;
}

inline void store_cached_level(const std::string& dir, int n, const std::vector<CatalogShard>& level) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::string path = cache_path(dir, n);
  std::ofstream out(path + ".tmp");
  bool first = true;
  for (const CatalogShard& shard : level)
    for (const Matroid& m : shard.members) {
      if (!first) out << "\n";
      write_matroid(out, m);
      first = false;
    }
  out.close();
  std::filesystem::rename(path + ".tmp", path, ec);
}

}  // namespace detail

inline Catalog build_catalog(int max_n, const EnumOptions& opt = {}) {
  if (max_n < 1) fail(errc::element_out_of_range, "catalog needs max_n >= 1");
  if (max_n > opt.hard_cap)
    fail(errc::ground_set_too_large,
         "catalog past " + std::to_string(opt.hard_cap) + " elements needs a larger cap");
  Catalog cat;
  cat.max_n = max_n;
  cat.by_n.resize(max_n + 1);
  cat.by_n[1] = {{1, 0, {canonicalize(uniform(0, 1)).matroid}},
                 {1, 1, {canonicalize(uniform(1, 1)).matroid}}};
  for (int n = 2; n <= max_n; ++n) {
    if (!opt.cache_dir.empty() && detail::load_cached_level(opt.cache_dir, n, cat.by_n[n])) continue;
    std::map<int, std::vector<Matroid>> raw_by_rank;
    for (const CatalogShard& shard : cat.by_n[n - 1]) {
      CatalogShard grown = extend_by_one(shard, opt);
      raw_by_rank[grown.r] = std::move(grown.members);
      // Coloop additions carry rank r members up to rank r+1.
      for (const Matroid& m : shard.members)
        raw_by_rank[shard.r + 1].push_back(direct_sum(m, uniform(1, 1)));
    }
    std::vector<CatalogShard> level;
    for (auto& [r, raw] : raw_by_rank) {
      CatalogShard shard{n, r, {}};
      for (auto& [key, m] : detail::keyed_canonical(std::move(raw), opt.jobs))
        shard.members.push_back(std::move(m));
      level.push_back(std::move(shard));
    }
    cat.by_n[n] = std::move(level);
    if (!opt.cache_dir.empty()) detail::store_cached_level(opt.cache_dir, n, cat.by_n[n]);
  }
  return cat;
}

struct IngestResult {
  std::vector<CatalogShard> shards;  // grouped by (n, r), ascending
  int total = 0;
  int unique = 0;
  int duplicates = 0;
  int rejects = 0;  // invalid blocks skipped; only nonzero when strict is off
};

// Validates, canonicalizes, and deduplicates a matroid file. In strict mode
// an invalid block aborts with its block index; otherwise it is counted.
inline IngestResult ingest(std::istream& in, bool strict = true) {
  IngestResult result;
  std::map<std::pair<int, int>, std::map<std::string, Matroid>> grouped;
  int idx = -1;
  for (const RawBlock& raw : read_raw(in)) {
    ++idx;
    ++result.total;
    Matroid canon(detail::Trusted{}, 0, 0, {0});
    try {
      canon = canonicalize(validate_block(raw, idx)).matroid;
    } catch (const Error& e) {
      if (strict || e.code == errc::parse_error) throw;
      ++result.rejects;
      continue;
    }
    auto& group = grouped[{canon.n(), canon.rank()}];
    std::string key = detail::serialize_key(canon);
    if (group.emplace(std::move(key), std::move(canon)).second)
      ++result.unique;
    else
      ++result.duplicates;
  }
  for (auto& [nr, group] : grouped) {
    CatalogShard shard{nr.first, nr.second, {}};
    for (auto& [key, m] : group) shard.members.push_back(std::move(m));
    result.shards.push_back(std::move(shard));
  }
  return result;
}

inline IngestResult ingest_file(const std::string& path, bool strict = true) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  return ingest(in, strict);
}

inline bool is_paving(const Matroid& m) {
  bool ok = true;
  for_each_subset_of_card(m.n(), m.rank() - 1, [&](mask_t s) {
    if (m.rank_of(s) != m.rank() - 1) ok = false;
  });
  return ok;
}

inline bool is_sparse_paving(const Matroid& m) { return is_paving(m) && is_paving(dual(m)); }

// Published counts of matroids on n elements up to isomorphism, n = 0..8.
// External reference values; reports compare against them rather than assume them.
inline constexpr std::array<long long, 9> kPublishedMatroidCounts = {1, 2, 4, 8, 17, 38, 98, 306, 1724};

struct TheoremRow {
  int n = 0, r = 0;
  long long count = 0, split = 0, nonsplit = 0, sparse_paving = 0;
};

struct TheoremMismatch {
  int n = 0, r = 0, index = 0;
  bool split_verdict = false;
  bool minor_free = false;
  Matroid matroid{detail::Trusted{}, 0, 0, {0}};
};

struct TheoremReport {
  int max_n = 0;
  std::vector<TheoremRow> rows;
  std::vector<TheoremMismatch> mismatches;
  struct Reference {
    int n = 0;
    long long published = 0, actual = 0;
  };
  std::vector<Reference> literature;
  bool ok() const { return mismatches.empty(); }
};

// Confronts the certificate-based split verdict with minor exclusion against
// S0..S4 across the whole catalog. Agreement everywhere is the theorem.
inline TheoremReport verify_theorem(int max_n, const EnumOptions& opt = {}) {
  if (max_n < 1) fail(errc::element_out_of_range, "verification needs max_n >= 1");
  Catalog cat = build_catalog(max_n, opt);
  std::vector<NamedMatroid> targets = excluded_minors();

  TheoremReport report;
  report.max_n = max_n;
  for (int n = 1; n <= max_n; ++n) {
    for (const CatalogShard& shard : cat.by_n[n]) {
      struct Verdict {
        bool split = false, minor_free = false, sparse = false;
      };
      std::vector<Verdict> verdicts(shard.members.size());
      detail::parallel_for(shard.members.size(), opt.jobs, [&](std::size_t i) {
        const Matroid& m = shard.members[i];
        Verdict v;
        v.split = is_split(m).verdict;
        v.minor_free = true;
        for (const NamedMatroid& t : targets)
          if (has_minor(m, t.matroid)) {
            v.minor_free = false;
            break;
          }
        v.sparse = is_sparse_paving(m);
        verdicts[i] = v;
      });
      TheoremRow row{shard.n, shard.r, static_cast<long long>(shard.members.size()), 0, 0, 0};
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const Verdict& v = verdicts[i];
        ++(v.split ? row.split : row.nonsplit);
        if (v.sparse) ++row.sparse_paving;
        if (v.split != v.minor_free)
          report.mismatches.push_back(
              {shard.n, shard.r, static_cast<int>(i), v.split, v.minor_free, shard.members[i]});
      }
      report.rows.push_back(row);
    }
    if (n < static_cast<int>(kPublishedMatroidCounts.size()))
      report.literature.push_back({n, kPublishedMatroidCounts[n], cat.total(n)});
  }
  return report;
}

}  // namespace splitmat
