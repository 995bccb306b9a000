#pragma once

#include <optional>
#include <vector>

#include "splitmat/matroid.hpp"

namespace splitmat {

// A proper cyclic flat witnessing that a connected matroid is not split:
// both sides stay connected and at least one of them is not uniform.
struct Certificate {
  ElementSet flat;
  bool restriction_connected = false;
  bool contraction_connected = false;
  bool restriction_uniform = false;
  bool contraction_uniform = false;
};

struct ComponentReport {
  ElementSet block;
  bool split = false;
  bool uniform = false;
};

struct ComponentAnalysis {
  std::vector<ComponentReport> items;
  int non_uniform = 0;
};

struct SplitReport {
  bool verdict = false;
  std::vector<Certificate> certificates;            // empty unless connected and non-split
  std::optional<ComponentAnalysis> component_analysis;  // populated when disconnected
};

namespace detail {
inline void require_connected(const Matroid& m) {
  if (!is_connected(m)) fail(errc::not_connected, "operation needs a connected matroid");
}
}

// Proper flats whose restriction and contraction are both connected,
// in cardinality-then-mask order.
inline std::vector<ElementSet> flacets(const Matroid& m) {
  detail::require_connected(m);
  SubsetTables t(m);
  mask_t ground = m.ground_mask();
  std::vector<ElementSet> out;
  for (int c = 1; c < m.n(); ++c) {
    for_each_subset_of_card(m.n(), c, [&](mask_t f) {
      if (!t.is_flat(f, ground)) return;
      int rf = t.rank[f];
      if (rf <= 0 || rf >= m.rank()) return;
      if (is_connected(restriction(m, f).matroid) && is_connected(contraction(m, f).matroid))
        out.push_back({f, m.n()});
    });
  }
  return out;
}

// Scans proper cyclic flats in cardinality-then-mask order and keeps those
// that certify the matroid is not split.
inline std::vector<Certificate> certificates(const Matroid& m) {
  detail::require_connected(m);
  std::vector<Certificate> out;
  for (const ElementSet& z : proper_cyclic_flats(m)) {
    Matroid restr = restriction(m, z.mask).matroid;
    Matroid contr = contraction(m, z.mask).matroid;
    bool rc = is_connected(restr);
    bool cc = is_connected(contr);
    if (!rc || !cc) continue;
    bool ru = is_uniform(restr);
    bool cu = is_uniform(contr);
    if (ru && cu) continue;
    out.push_back({z, rc, cc, ru, cu});
  }
  return out;
}

inline SplitReport is_split(const Matroid& m) {
  if (m.n() == 0) fail(errc::empty_ground_set, "split analysis needs a nonempty ground set");
  ComponentPartition parts = components(m);
  if (parts.blocks.size() == 1) {
    SplitReport report;
    report.certificates = certificates(m);
    report.verdict = report.certificates.empty();
    return report;
  }
  // Disconnected case: every component must be split and at most one of them
  // may fail to be uniform.
  ComponentAnalysis analysis;
  bool all_split = true;
  for (const ElementSet& block : parts.blocks) {
    Matroid sub = restriction(m, block.mask).matroid;
    bool split = certificates(sub).empty();
    bool unif = is_uniform(sub);
    if (!split) all_split = false;
    if (!unif) ++analysis.non_uniform;
    analysis.items.push_back({block, split, unif});
  }
  SplitReport report;
  report.verdict = all_split && analysis.non_uniform <= 1;
  report.component_analysis = std::move(analysis);
  return report;
}

// Split test that never inspects contractions: a connected matroid is split
// exactly when, in it and in its dual, every proper cyclic flat with a
// connected restriction restricts to a uniform matroid.
inline bool is_split_via_corollary(const Matroid& m) {
  detail::require_connected(m);
  const Matroid d = dual(m);
  for (const Matroid* side : {&m, &d}) {
    for (const ElementSet& z : proper_cyclic_flats(*side)) {
      Matroid restr = restriction(*side, z.mask).matroid;
      if (is_connected(restr) && !is_uniform(restr)) return false;
    }
  }
  return true;
}

}  // namespace splitmat
