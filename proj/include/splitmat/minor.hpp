#pragma once

#include <optional>
#include <vector>

#include "splitmat/canonical.hpp"
#include "splitmat/matroid.hpp"
#include "splitmat/split.hpp"

namespace splitmat {

// Proof that `target` is a minor of `host`: contract `contracted`, delete
// `deleted`, then send target element t to host element relabel[t].
struct MinorWitness {
  ElementSet contracted;
  ElementSet deleted;
  std::vector<int> relabel;
};

namespace detail {

struct MinorSearchTarget {
  const Matroid& m;
  std::size_t nb;
  std::vector<int> degrees;
  Canonical canon;

  explicit MinorSearchTarget(const Matroid& target)
      : m(target),
        nb(target.bases().size()),
        degrees(basis_degree_profile(target)),
        canon(canonicalize(target)) {}
};

// Enumerates card-k subsets of the (possibly sparse) mask `within` in
// ascending numeric order by walking dense masks and spreading their bits.
template <class Fn>
void for_each_subset_within(mask_t within, int k, Fn&& fn) {
  int avail = popcount(within);
  if (k > avail) return;
  std::vector<int> positions;
  positions.reserve(avail);
  for_each_element(within, [&](int e) { positions.push_back(e); });
  for_each_subset_of_card(avail, k, [&](mask_t dense) {
    mask_t spread = 0;
    for_each_element(dense, [&](int i) { spread |= bit(positions[i]); });
    fn(spread);
  });
}

}  // namespace detail

// First witness in ascending (contracted mask, deleted mask) order, if any.
// The search space is the standard normal form: contracted sets independent,
// deleted sets coindependent, sizes fixed by the rank and size gaps.
inline std::optional<MinorWitness> has_minor(const Matroid& host, const Matroid& target) {
  const int c = host.rank() - target.rank();
  const int d = host.n() - c - target.n();
  if (c < 0 || d < 0) return std::nullopt;
  if (host.bases().size() < target.bases().size()) return std::nullopt;
  const mask_t ground = host.ground_mask();

  if (target.n() == 0) {
    // Only the rank-0 matroid on nothing: contract the first basis, delete the rest.
    mask_t cset = host.bases().front();
    return MinorWitness{{cset, host.n()}, {ground & ~cset, host.n()}, {}};
  }

  detail::MinorSearchTarget want(target);
  SubsetTables tables(host);
  std::optional<MinorWitness> found;

  detail::for_each_subset_within(ground, c, [&](mask_t cset) {
    if (found || tables.rank[cset] != c) return;
    detail::for_each_subset_within(ground & ~cset, d, [&](mask_t dset) {
      if (found) return;
      if (tables.rank[ground & ~dset] != host.rank()) return;  // not coindependent
      mask_t keep = ground & ~cset & ~dset;
      std::vector<mask_t> bases;
      for (mask_t b : host.bases())
        if (popcount(b & cset) == c && (b & dset) == 0) bases.push_back(b & keep);
      std::sort(bases.begin(), bases.end());
      bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
      if (bases.size() != want.nb) return;
      std::vector<int> kept;
      std::vector<mask_t> packed;
      packed.reserve(bases.size());
      for_each_element(keep, [&](int e) { kept.push_back(e); });
      for (mask_t b : bases) packed.push_back(detail::compact_mask(b, keep));
      Matroid minor(detail::Trusted{}, target.n(), target.rank(), std::move(packed));
      if (basis_degree_profile(minor) != want.degrees) return;
      Canonical canon = canonicalize(minor);
      if (canon.matroid.bases() != want.canon.matroid.bases()) return;

      // target element t sits at canonical slot canon_t[t]; the minor element
      // occupying that slot is its image.
      std::vector<int> from_canonical(minor.n());
      for (int e = 0; e < minor.n(); ++e) from_canonical[canon.to_canonical[e]] = e;
      std::vector<int> relabel(target.n());
      for (int t = 0; t < target.n(); ++t)
        relabel[t] = kept[from_canonical[want.canon.to_canonical[t]]];

      found = MinorWitness{{cset, host.n()}, {dset, host.n()}, std::move(relabel)};
    });
  });
  return found;
}

// Checks a witness by replaying it against the host.
inline bool witness_checks(const Matroid& host, const Matroid& target, const MinorWitness& w) {
  if (w.contracted.mask & w.deleted.mask) return false;
  std::vector<mask_t> expect;
  const int c = popcount(w.contracted.mask);
  for (mask_t b : host.bases()) {
    if (popcount(b & w.contracted.mask) != c || (b & w.deleted.mask) != 0) continue;
    expect.push_back(b & ~w.contracted.mask & ~w.deleted.mask);
  }
  std::sort(expect.begin(), expect.end());
  expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
  std::vector<mask_t> mapped;
  for (mask_t b : target.bases()) {
    mask_t img = 0;
    for_each_element(b, [&](int t) { img |= bit(w.relabel[t]); });
    mapped.push_back(img);
  }
  std::sort(mapped.begin(), mapped.end());
  return mapped == expect;
}

// True when the matroid is not split but every single-element deletion and
// contraction is.
inline bool verify_excluded_minor(const Matroid& m) {
  if (is_split(m).verdict) return false;
  for (int e = 0; e < m.n(); ++e) {
    if (!is_split(deletion(m, bit(e)).matroid).verdict) return false;
    if (!is_split(contraction(m, bit(e)).matroid).verdict) return false;
  }
  return true;
}

}  // namespace splitmat
