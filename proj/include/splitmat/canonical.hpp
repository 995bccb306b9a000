#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>
#include <vector>

#include "splitmat/matroid.hpp"

namespace splitmat {

struct Canonical {
  std::vector<int> to_canonical;  // new label of each original element
  Matroid matroid;                // relabeled copy carrying the minimal basis list
};

struct CanonicalForm {
  std::string key;  // n, r, basis count, then the minimal mask list (LE16 each)
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    return a.key.compare(b.key) <=> 0;
  }
};

namespace detail {

// Minimizes the sorted basis-mask list over relabelings that respect an
// iso-invariant coloring of the elements: colors come from iterated
// refinement on basis degrees and pair degrees, and each color class owns a
// fixed block of positions. Within that family the positions are assigned
// from the top bit down; a partial assignment's sorted high-bit list
// lower-bounds every completion, so branches whose bound already exceeds the
// best full key are cut. Automorphisms are harvested along the way:
// transpositions up front, and at every leaf that reproduces the best key,
// the composition with the best labeling. Candidates reachable from an
// already-explored sibling by a prefix-fixing automorphism generate the same
// subtree and are skipped.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Matroid& m) : n_(m.n()), bases_(m.bases()) {
    std::unordered_set<mask_t> base_set(bases_.begin(), bases_.end());
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y) {
        bool ok = true;
        for (mask_t b : bases_) {
          if ((((b >> x) ^ (b >> y)) & 1u) && !base_set.count(b ^ (bit(x) | bit(y)))) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        Perm g{};
        for (int e = 0; e < n_; ++e) g[e] = static_cast<std::uint8_t>(e);
        g[x] = static_cast<std::uint8_t>(y);
        g[y] = static_cast<std::uint8_t>(x);
        remember(g);
      }
    refine_colors();
  }

  Canonical run(int rank) {
    highs_.assign(bases_.size(), 0);
    used_ = 0;
    pos_of_.assign(std::max(n_, 1), -1);
    best_key_.clear();
    best_at_.assign(std::max(n_, 1), -1);
    best_inv_.assign(std::max(n_, 1), -1);
    dfs(n_ - 1);
    std::vector<int> to_canonical(best_at_.begin(), best_at_.begin() + n_);
    return {std::move(to_canonical),
            Matroid(Trusted{}, n_, rank, std::vector<mask_t>(best_key_))};
  }

 private:
  using Perm = std::array<std::uint8_t, kMaxGroundSet>;

  // Splits elements into classes that any isomorphism must preserve, and
  // deals each class a fixed block of positions: signature-smallest class
  // lowest. Classes only ever split across rounds, so a stable class count
  // means a stable partition.
  void refine_colors() {
    std::vector<std::vector<int>> pair(n_, std::vector<int>(n_, 0));
    std::vector<int> deg(n_, 0);
    for (mask_t b : bases_)
      for (mask_t u = b; u; u &= u - 1) {
        int e = lowest_bit(u);
        ++deg[e];
        for (mask_t v = u & (u - 1); v; v &= v - 1) ++pair[e][lowest_bit(v)];
      }
    for (int e = 0; e < n_; ++e)
      for (int f = e + 1; f < n_; ++f) pair[f][e] = pair[e][f];

    std::vector<int> id(n_, 0);
    std::vector<int> classes_of_last_round(n_, 0);
    auto assign_ids = [&](std::vector<std::vector<int>>& sigs) {
      std::vector<std::vector<int>> uniq = sigs;
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      for (int e = 0; e < n_; ++e)
        id[e] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sigs[e]) -
                                 uniq.begin());
      return static_cast<int>(uniq.size());
    };

    std::vector<std::vector<int>> sigs(n_);
    for (int e = 0; e < n_; ++e) sigs[e] = {deg[e]};
    int classes = n_ > 0 ? assign_ids(sigs) : 0;
    while (true) {
      for (int e = 0; e < n_; ++e) {
        std::vector<int> neigh;
        for (int f = 0; f < n_; ++f)
          if (f != e) neigh.push_back(id[f] * 4096 + pair[e][f]);
        std::sort(neigh.begin(), neigh.end());
        sigs[e] = {id[e]};
        sigs[e].insert(sigs[e].end(), neigh.begin(), neigh.end());
      }
      int next = assign_ids(sigs);
      if (next == classes) break;
      classes = next;
    }

    std::vector<int> order(n_);
    for (int e = 0; e < n_; ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return id[a] < id[b]; });
    color_of_position_.assign(std::max(n_, 1), 0);
    class_members_.assign(std::max(classes, 1), 0);
    for (int p = 0; p < n_; ++p) {
      color_of_position_[p] = id[order[p]];
      class_members_[id[order[p]]] |= bit(order[p]);
    }
  }

  void remember(const Perm& g) {
    if (autos_.size() >= 4096) return;
    std::uint64_t packed = 0;
    for (int e = 0; e < n_; ++e) packed |= std::uint64_t{g[e]} << (4 * e);
    if (auto_keys_.insert(packed).second) autos_.push_back(g);
  }

  void dfs(int p) {
    if (p < 0) {
      std::vector<mask_t> key = highs_;
      std::sort(key.begin(), key.end());
      if (best_key_.empty() || key < best_key_) {
        best_key_ = std::move(key);
        for (int q = 0; q < n_; ++q) {
          best_at_[q] = pos_of_[q];
          best_inv_[pos_of_[q]] = q;
        }
      } else if (key == best_key_) {
        // Both labelings send the matroid to the same basis list, so routing
        // through the best one and back is an automorphism.
        Perm g{};
        for (int e = 0; e < n_; ++e) g[e] = static_cast<std::uint8_t>(best_inv_[pos_of_[e]]);
        remember(g);
      }
      return;
    }
    struct Cand {
      int x;
      std::vector<mask_t> highs;
      std::vector<mask_t> bound;
    };
    std::vector<Cand> cands;
    mask_t allowed = class_members_[color_of_position_[p]] & ~used_;
    for (mask_t rest = allowed; rest; rest &= rest - 1) {
      int x = lowest_bit(rest);
      Cand c{x, highs_, {}};
      for (std::size_t i = 0; i < bases_.size(); ++i)
        if ((bases_[i] >> x) & 1u) c.highs[i] |= bit(p);
      c.bound = c.highs;
      std::sort(c.bound.begin(), c.bound.end());
      // Every completed mask only grows, so the sorted high list bounds the
      // final key from below; compare against the incumbent.
      if (!best_key_.empty() && c.bound > best_key_) continue;
      cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.x < b.x;
    });
    std::vector<int> tried;
    mask_t forbidden = 0;
    std::size_t autos_seen = static_cast<std::size_t>(-1);
    for (Cand& c : cands) {
      if (!best_key_.empty() && c.bound > best_key_) continue;  // best improved meanwhile
      if (autos_seen != autos_.size()) {
        autos_seen = autos_.size();
        stab_.clear();
        for (const Perm& g : autos_) {
          bool fixes = true;
          for (mask_t u = used_; u && fixes; u &= u - 1)
            if (int e = lowest_bit(u); g[e] != e) fixes = false;
          if (fixes) stab_.push_back(&g);
        }
        forbidden = 0;
        for (int y : tried) {
          forbidden |= bit(y);
          for (const Perm* g : stab_) forbidden |= bit((*g)[y]);
        }
      }
      if ((forbidden >> c.x) & 1u) continue;
      tried.push_back(c.x);
      std::vector<mask_t> saved = std::move(highs_);
      highs_ = std::move(c.highs);
      used_ |= bit(c.x);
      pos_of_[c.x] = p;
      std::vector<const Perm*> saved_stab = std::move(stab_);
      dfs(p - 1);
      stab_ = std::move(saved_stab);
      pos_of_[c.x] = -1;
      used_ &= ~bit(c.x);
      highs_ = std::move(saved);
      forbidden |= bit(c.x);
      for (const Perm* g : stab_) forbidden |= bit((*g)[c.x]);
    }
  }

  int n_;
  std::vector<mask_t> bases_;
  std::vector<int> color_of_position_;  // which class each position draws from
  std::vector<mask_t> class_members_;   // element set of each color class
  std::vector<Perm> autos_;  // verified automorphisms, grows during the search
  std::unordered_set<std::uint64_t> auto_keys_;
  std::vector<const Perm*> stab_;  // autos fixing the current prefix pointwise
  std::vector<mask_t> highs_;  // assigned high bits per basis, original order
  mask_t used_ = 0;
  std::vector<int> pos_of_;   // position chosen for each original element
  std::vector<mask_t> best_key_;
  std::vector<int> best_at_;   // new label of each original element, at the best leaf
  std::vector<int> best_inv_;  // original element carrying each new label
};

inline std::string serialize_key(const Matroid& canonical) {
  std::string key;
  key.reserve(4 + 2 * canonical.bases().size());
  key.push_back(static_cast<char>(canonical.n()));
  key.push_back(static_cast<char>(canonical.rank()));
  key.push_back(static_cast<char>(canonical.bases().size() & 0xff));
  key.push_back(static_cast<char>(canonical.bases().size() >> 8));
  for (mask_t b : canonical.bases()) {
    key.push_back(static_cast<char>(b & 0xff));
    key.push_back(static_cast<char>(b >> 8));
  }
  return key;
}

}  // namespace detail

inline Canonical canonicalize(const Matroid& m) {
  return detail::CanonicalSearch(m).run(m.rank());
}

inline CanonicalForm canonical_form(const Matroid& m) {
  return {detail::serialize_key(canonicalize(m).matroid)};
}

// Sorted per-element basis counts; invariant under relabeling.
inline std::vector<int> basis_degree_profile(const Matroid& m) {
  std::vector<int> deg(m.n(), 0);
  for (mask_t b : m.bases()) for_each_element(b, [&](int e) { ++deg[e]; });
  std::sort(deg.begin(), deg.end());
  return deg;
}

inline bool is_isomorphic(const Matroid& a, const Matroid& b) {
  if (a.n() != b.n() || a.rank() != b.rank() || a.bases().size() != b.bases().size())
    return false;
  if (basis_degree_profile(a) != basis_degree_profile(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace splitmat
