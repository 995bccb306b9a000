#pragma once

#include <cstdint>
#include <vector>

#include "splitmat/matroid.hpp"
#include "splitmat/split.hpp"

namespace splitmat {

// Basis indicator vectors; the vertices of the basis polytope.
struct VertexMatrix {
  int cols = 0;
  std::vector<std::vector<std::int64_t>> rows;
};

inline VertexMatrix vertex_matrix(const Matroid& m) {
  VertexMatrix vm{m.n(), {}};
  vm.rows.reserve(m.bases().size());
  for (mask_t b : m.bases()) {
    std::vector<std::int64_t> row(m.n(), 0);
    for_each_element(b, [&](int e) { row[e] = 1; });
    vm.rows.push_back(std::move(row));
  }
  return vm;
}

// Row rank over the rationals via fraction-free (Bareiss) elimination.
// Entries stay integral minors of the input, so int64 is exact for the
// 0/±1 matrices that arise from basis vectors.
inline int integer_rank(std::vector<std::vector<std::int64_t>> a) {
  if (a.empty() || a[0].empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  std::int64_t prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

inline int affine_dim(const std::vector<std::vector<std::int64_t>>& points) {
  if (points.empty()) return -1;
  std::vector<std::vector<std::int64_t>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<std::int64_t> d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return integer_rank(std::move(diffs));
}

inline int polytope_dim(const Matroid& m) { return affine_dim(vertex_matrix(m).rows); }

namespace detail {
inline void require_flat(const Matroid& m, mask_t f) {
  if ((f & ~m.ground_mask()) != 0)
    fail(errc::element_out_of_range, "flat leaves the ground set");
  if (m.closure_mask(f) != f)
    fail(errc::not_a_flat, "set {" + ElementSet(f, m.n()).csv() + "} is not closed");
}
}

// Dimension of the face of the basis polytope cut out by sum_{i in F} x_i = r(F);
// -1 when no vertex lies on it.
inline int flat_face_dim(const Matroid& m, mask_t f) {
  detail::require_flat(m, f);
  const int rf = m.rank_of(f);
  std::vector<std::vector<std::int64_t>> points;
  for (mask_t b : m.bases()) {
    if (popcount(b & f) != rf) continue;
    std::vector<std::int64_t> row(m.n(), 0);
    for_each_element(b, [&](int e) { row[e] = 1; });
    points.push_back(std::move(row));
  }
  return affine_dim(points);
}
inline int flat_face_dim(const Matroid& m, const ElementSet& f) { return flat_face_dim(m, f.mask); }

inline bool is_facet_flat(const Matroid& m, mask_t f) {
  detail::require_connected(m);
  detail::require_flat(m, f);
  return flat_face_dim(m, f) == polytope_dim(m) - 1;
}
inline bool is_facet_flat(const Matroid& m, const ElementSet& f) { return is_facet_flat(m, f.mask); }

struct FlacetCrossCheck {
  std::vector<ElementSet> combinatorial;  // flacets from connectivity of both sides
  std::vector<ElementSet> geometric;      // inclusion-minimal facet-defining flats
  bool agree = false;
};

// Confronts the connectivity description of the polytope's nontrivial facets
// with exact facet geometry. Any symmetric difference is a bug in one side.
inline FlacetCrossCheck crosscheck_flacets(const Matroid& m) {
  FlacetCrossCheck out;
  out.combinatorial = flacets(m);

  SubsetTables t(m);
  mask_t ground = m.ground_mask();
  const int dim = polytope_dim(m);
  // Every proper nonempty flat whose section is a facet, with no dedup: if two
  // flats ever cut the same facet the lists fall out of step and agree fails.
  for (int c = 1; c < m.n(); ++c) {
    for_each_subset_of_card(m.n(), c, [&](mask_t f) {
      if (!t.is_flat(f, ground)) return;
      if (flat_face_dim(m, f) == dim - 1) out.geometric.push_back({f, m.n()});
    });
  }
  std::sort(out.geometric.begin(), out.geometric.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.card() != b.card()) return a.card() < b.card();
    return a.mask < b.mask;
  });
  out.agree = out.combinatorial.size() == out.geometric.size();
  if (out.agree)
    for (std::size_t i = 0; i < out.geometric.size(); ++i)
      if (out.combinatorial[i].mask != out.geometric[i].mask) out.agree = false;
  return out;
}

}  // namespace splitmat
