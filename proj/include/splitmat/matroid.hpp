#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "splitmat/elementset.hpp"
#include "splitmat/errors.hpp"

namespace splitmat {

namespace detail {
struct Trusted {};  // tag: bases already known to satisfy the exchange axiom
}

inline std::uint32_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t v = 1;
  for (int i = 0; i < k; ++i) v = v * static_cast<std::uint64_t>(n - i) / (i + 1);
  return static_cast<std::uint32_t>(v);
}

// A matroid given by its full basis family over ground set {0..n-1}.
// Instances are immutable after construction; every constructor path either
// proves or inherits the basis-exchange axiom.
class Matroid {
 public:
  static Matroid validate(int n, int r, std::vector<mask_t> bases);
  static Matroid validate(int n, int r, const std::vector<ElementSet>& bases);

  Matroid(detail::Trusted, int n, int r, std::vector<mask_t> bases)
      : n_(n), r_(r), bases_(std::move(bases)) {
    std::sort(bases_.begin(), bases_.end());
  }

  int n() const { return n_; }
  int rank() const { return r_; }
  const std::vector<mask_t>& bases() const { return bases_; }
  mask_t ground_mask() const { return full_mask(n_); }
  ElementSet ground_set() const { return {ground_mask(), n_}; }

  bool is_basis(mask_t s) const {
    return std::binary_search(bases_.begin(), bases_.end(), s);
  }

  // r(S) = max over bases of |B n S|; the maximum is always attained.
  int rank_of(mask_t s) const {
    int best = 0;
    for (mask_t b : bases_) best = std::max(best, popcount(b & s));
    return best;
  }
  int rank_of(const ElementSet& s) const { return rank_of(checked(s)); }

  bool is_independent(mask_t s) const { return rank_of(s) == popcount(s); }

  mask_t closure_mask(mask_t s) const {
    int rs = rank_of(s);
    mask_t out = s;
    for_each_element(ground_mask() & ~s, [&](int e) {
      if (rank_of(s | bit(e)) == rs) out |= bit(e);
    });
    return out;
  }
  ElementSet closure(const ElementSet& s) const { return {closure_mask(checked(s)), n_}; }

  bool is_flat(mask_t s) const { return closure_mask(s) == s; }

  // S is cyclic when the restriction to S has no coloop; the empty set counts.
  bool is_cyclic_set(mask_t s) const {
    int rs = rank_of(s);
    bool ok = true;
    for_each_element(s, [&](int e) {
      if (rank_of(s & ~bit(e)) != rs) ok = false;
    });
    return ok;
  }
  bool is_cyclic_set(const ElementSet& s) const { return is_cyclic_set(checked(s)); }

  mask_t loops() const {
    mask_t in_some = 0;
    for (mask_t b : bases_) in_some |= b;
    return ground_mask() & ~in_some;
  }
  mask_t coloops() const {
    mask_t in_all = ground_mask();
    for (mask_t b : bases_) in_all &= b;
    return in_all;
  }

  friend bool operator==(const Matroid&, const Matroid&) = default;

 private:
  mask_t checked(const ElementSet& s) const {
    if (s.n != n_ || (s.mask & ~ground_mask()) != 0)
      fail(errc::element_out_of_range, "set does not live in this ground set");
    return s.mask;
  }

  int n_;
  int r_;
  std::vector<mask_t> bases_;  // ascending
};

// Per-subset rank and independence over the whole powerset. Worth building
// whenever an operation sweeps many subsets; 2^n stays <= 65536 by the cap.
struct SubsetTables {
  int n = 0;
  std::vector<std::uint8_t> rank;
  std::vector<std::uint8_t> indep;

  explicit SubsetTables(const Matroid& m) : n(m.n()) {
    std::size_t size = std::size_t{1} << n;
    rank.assign(size, 0);
    indep.assign(size, 0);
    for (mask_t b : m.bases()) indep[b] = 1;
    // Subsets of independent sets are independent; descending order visits
    // every superset before its children.
    for (mask_t s = static_cast<mask_t>(size - 1);; --s) {
      if (indep[s]) {
        for_each_element(s, [&](int e) { indep[s & ~bit(e)] = 1; });
      }
      if (s == 0) break;
    }
    for (mask_t s = 1; s < size; ++s) {
      if (indep[s]) {
        rank[s] = static_cast<std::uint8_t>(popcount(s));
      } else {
        std::uint8_t best = 0;
        for_each_element(s, [&](int e) { best = std::max(best, rank[s & ~bit(e)]); });
        rank[s] = best;
      }
    }
  }

  mask_t closure(mask_t s, mask_t ground) const {
    mask_t out = s;
    for_each_element(ground & ~s, [&](int e) {
      if (rank[s | bit(e)] == rank[s]) out |= bit(e);
    });
    return out;
  }
  bool is_flat(mask_t s, mask_t ground) const { return closure(s, ground) == s; }
  bool is_cyclic(mask_t s) const {
    bool ok = true;
    for_each_element(s, [&](int e) {
      if (rank[s & ~bit(e)] != rank[s]) ok = false;
    });
    return ok;
  }
};

namespace detail {

// Hunts down a concrete basis pair violating the exchange axiom. Only called
// once validation has already decided the family is not a matroid.
[[noreturn]] inline void report_exchange_violation(int n, const std::vector<mask_t>& bases) {
  std::vector<mask_t> sorted = bases;
  std::sort(sorted.begin(), sorted.end());
  auto is_basis = [&](mask_t s) {
    return std::binary_search(sorted.begin(), sorted.end(), s);
  };
  for (mask_t b1 : bases) {
    for (mask_t b2 : bases) {
      mask_t only1 = b1 & ~b2;
      bool bad = false;
      int bad_e = -1;
      for_each_element(only1, [&](int e) {
        if (bad) return;
        bool found = false;
        for_each_element(b2 & ~b1, [&](int f) {
          if (!found && is_basis((b1 & ~bit(e)) | bit(f))) found = true;
        });
        if (!found) {
          bad = true;
          bad_e = e;
        }
      });
      if (bad) {
        Error err(errc::exchange_axiom_violation,
                  "no exchange for element " + std::to_string(bad_e) + " of basis {" +
                      ElementSet(b1, n).csv() + "} against {" + ElementSet(b2, n).csv() + "}");
        err.basis_a = b1;
        err.basis_b = b2;
        err.element = bad_e;
        throw err;
      }
    }
  }
  throw std::logic_error("exchange check disagreed with purity check");
}

}  // namespace detail

inline Matroid Matroid::validate(int n, int r, std::vector<mask_t> bases) {
  if (n < 0 || n > kMaxGroundSet)
    fail(errc::ground_set_too_large, "ground set size " + std::to_string(n));
  if (bases.empty()) fail(errc::empty_basis_list, "a matroid has at least one basis");
  if (r < 0 || r > n) fail(errc::element_out_of_range, "rank " + std::to_string(r));
  mask_t ground = full_mask(n);
  for (mask_t b : bases) {
    if ((b & ~ground) != 0)
      fail(errc::element_out_of_range,
           "basis {" + ElementSet(b, kMaxGroundSet).csv() + "} leaves {0.." + std::to_string(n - 1) + "}");
    if (popcount(b) != r)
      fail(errc::mixed_basis_sizes, "basis {" + ElementSet(b, n).csv() + "} has size " +
                                        std::to_string(popcount(b)) + ", expected " + std::to_string(r));
  }
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  // Exchange axiom via the purity criterion: for every independent I with
  // extension set ext(I) = {e : I+e independent}, I must be a maximum
  // independent subset of E - ext(I). Equivalent to basis exchange and checks
  // the whole family in O(2^n * n) instead of pairwise.
  std::size_t size = std::size_t{1} << n;
  std::vector<std::uint8_t> indep(size, 0), rank(size, 0);
  for (mask_t b : bases) indep[b] = 1;
  for (mask_t s = static_cast<mask_t>(size - 1);; --s) {
    if (indep[s]) for_each_element(s, [&](int e) { indep[s & ~bit(e)] = 1; });
    if (s == 0) break;
  }
  for (mask_t s = 1; s < size; ++s) {
    if (indep[s]) {
      rank[s] = static_cast<std::uint8_t>(popcount(s));
    } else {
      std::uint8_t best = 0;
      for_each_element(s, [&](int e) { best = std::max(best, rank[s & ~bit(e)]); });
      rank[s] = best;
    }
  }
  for (mask_t s = 0; s < size; ++s) {
    if (!indep[s]) continue;
    mask_t ext = 0;
    for_each_element(ground & ~s, [&](int e) {
      if (indep[s | bit(e)]) ext |= bit(e);
    });
    if (rank[ground & ~ext] != popcount(s)) detail::report_exchange_violation(n, bases);
  }
  return Matroid(detail::Trusted{}, n, r, std::move(bases));
}

inline Matroid Matroid::validate(int n, int r, const std::vector<ElementSet>& bases) {
  std::vector<mask_t> masks;
  masks.reserve(bases.size());
  for (const ElementSet& b : bases) masks.push_back(b.mask);
  return validate(n, r, std::move(masks));
}

// ---- whole-matroid derived families ----

// Minimal dependent sets, ordered by cardinality then mask.
inline std::vector<ElementSet> circuits(const Matroid& m) {
  SubsetTables t(m);
  std::vector<ElementSet> out;
  int cap = std::min(m.n(), m.rank() + 1);  // a circuit has at most r+1 elements
  for (int c = 1; c <= cap; ++c) {
    for_each_subset_of_card(m.n(), c, [&](mask_t s) {
      if (t.rank[s] >= c) return;  // independent
      bool minimal = true;
      for_each_element(s, [&](int e) {
        if (t.rank[s & ~bit(e)] != c - 1) minimal = false;
      });
      if (minimal) out.push_back({s, m.n()});
    });
  }
  return out;
}

struct CyclicFlat {
  ElementSet set;
  int rank = 0;
  bool proper = false;  // 0 < rank < r(M)
};

// All cyclic flats, ordered by cardinality then mask.
inline std::vector<CyclicFlat> cyclic_flats(const Matroid& m) {
  SubsetTables t(m);
  mask_t ground = m.ground_mask();
  std::vector<CyclicFlat> out;
  for (int c = 0; c <= m.n(); ++c) {
    for_each_subset_of_card(m.n(), c, [&](mask_t s) {
      if (!t.is_flat(s, ground) || !t.is_cyclic(s)) return;
      int r = t.rank[s];
      out.push_back({{s, m.n()}, r, r > 0 && r < m.rank()});
    });
  }
  return out;
}

inline std::vector<ElementSet> proper_cyclic_flats(const Matroid& m) {
  std::vector<ElementSet> out;
  for (const CyclicFlat& f : cyclic_flats(m))
    if (f.proper) out.push_back(f.set);
  return out;
}

inline Matroid dual(const Matroid& m) {
  mask_t ground = m.ground_mask();
  std::vector<mask_t> bases;
  bases.reserve(m.bases().size());
  for (mask_t b : m.bases()) bases.push_back(ground & ~b);
  return Matroid(detail::Trusted{}, m.n(), m.n() - m.rank(), std::move(bases));
}

// Result of an element-removing operation. Surviving elements are compacted
// to {0..k-1} preserving order; kept[i] is the original label of element i,
// so witnesses found in the minor can be lifted back to the host.
struct MinorResult {
  Matroid matroid;
  std::vector<int> kept;

  int to_host(int e) const { return kept[e]; }
  mask_t lift(mask_t s) const {
    mask_t out = 0;
    for_each_element(s, [&](int e) { out |= bit(kept[e]); });
    return out;
  }
};

namespace detail {

inline mask_t compact_mask(mask_t s, mask_t keep) {
  // Bits of s restricted to keep, repacked densely (pext by hand).
  mask_t out = 0;
  int idx = 0;
  for_each_element(keep, [&](int e) {
    if ((s >> e) & 1u) out |= bit(idx);
    ++idx;
  });
  return out;
}

inline void check_removable(const Matroid& m, mask_t x) {
  if ((x & ~m.ground_mask()) != 0)
    fail(errc::element_out_of_range, "removal set leaves the ground set");
  if (x == m.ground_mask())
    fail(errc::empty_ground_set, "operation would empty the ground set");
}

inline MinorResult make_minor(const Matroid& m, mask_t keep, std::vector<mask_t> bases, int r) {
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  std::vector<int> kept;
  for_each_element(keep, [&](int e) { kept.push_back(e); });
  std::vector<mask_t> packed;
  packed.reserve(bases.size());
  for (mask_t b : bases) packed.push_back(compact_mask(b, keep));
  return {Matroid(Trusted{}, static_cast<int>(kept.size()), r, std::move(packed)), std::move(kept)};
}

}  // namespace detail

inline MinorResult deletion(const Matroid& m, mask_t x) {
  detail::check_removable(m, x);
  mask_t keep = m.ground_mask() & ~x;
  int r = m.rank_of(keep);
  std::vector<mask_t> bases;
  for (mask_t b : m.bases())
    if (popcount(b & keep) == r) bases.push_back(b & keep);
  return detail::make_minor(m, keep, std::move(bases), r);
}
inline MinorResult deletion(const Matroid& m, const ElementSet& x) { return deletion(m, x.mask); }

inline MinorResult contraction(const Matroid& m, mask_t x) {
  detail::check_removable(m, x);
  mask_t keep = m.ground_mask() & ~x;
  int rx = m.rank_of(x);
  std::vector<mask_t> bases;
  for (mask_t b : m.bases())
    if (popcount(b & x) == rx) bases.push_back(b & keep);
  return detail::make_minor(m, keep, std::move(bases), m.rank() - rx);
}
inline MinorResult contraction(const Matroid& m, const ElementSet& x) {
  return contraction(m, x.mask);
}

inline MinorResult restriction(const Matroid& m, mask_t z) {
  if ((z & ~m.ground_mask()) != 0)
    fail(errc::element_out_of_range, "restriction set leaves the ground set");
  return deletion(m, m.ground_mask() & ~z);
}
inline MinorResult restriction(const Matroid& m, const ElementSet& z) {
  return restriction(m, z.mask);
}

inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  if (a.n() + b.n() > kMaxGroundSet)
    fail(errc::ground_set_too_large, "direct sum on " + std::to_string(a.n() + b.n()) + " elements");
  std::vector<mask_t> bases;
  bases.reserve(a.bases().size() * b.bases().size());
  for (mask_t bb : b.bases())
    for (mask_t ba : a.bases()) bases.push_back(ba | (bb << a.n()));
  return Matroid(detail::Trusted{}, a.n() + b.n(), a.rank() + b.rank(), std::move(bases));
}

struct ComponentPartition {
  std::vector<ElementSet> blocks;  // ordered by smallest element
};

// Connected components under the circuit relation: e ~ f when some circuit
// contains both. Loops and coloops end up as singleton blocks.
inline ComponentPartition components(const Matroid& m) {
  if (m.n() == 0) fail(errc::empty_ground_set, "connectivity needs a nonempty ground set");
  std::vector<int> parent(m.n());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  SubsetTables t(m);
  int cap = std::min(m.n(), m.rank() + 1);
  for (int c = 1; c <= cap; ++c) {
    for_each_subset_of_card(m.n(), c, [&](mask_t s) {
      if (t.rank[s] >= c) return;
      bool minimal = true;
      for_each_element(s, [&](int e) {
        if (t.rank[s & ~bit(e)] != c - 1) minimal = false;
      });
      if (!minimal) return;
      int head = find(lowest_bit(s));
      for_each_element(s, [&](int e) { parent[find(e)] = head; });
    });
  }
  std::vector<mask_t> block_of(m.n(), 0);
  for (int e = 0; e < m.n(); ++e) block_of[find(e)] |= bit(e);
  std::vector<mask_t> blocks;
  for (int e = 0; e < m.n(); ++e)
    if (block_of[e] != 0) blocks.push_back(block_of[e]);
  std::sort(blocks.begin(), blocks.end(),
            [](mask_t a, mask_t b) { return lowest_bit(a) < lowest_bit(b); });
  ComponentPartition out;
  for (mask_t b : blocks) out.blocks.push_back({b, m.n()});
  return out;
}

inline bool is_connected(const Matroid& m) { return components(m).blocks.size() == 1; }

inline bool is_uniform(const Matroid& m) {
  return m.bases().size() == binomial(m.n(), m.rank());
}

}  // namespace splitmat
