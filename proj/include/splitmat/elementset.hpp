#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "splitmat/errors.hpp"

namespace splitmat {

using mask_t = std::uint32_t;

// Hard cap so every subset family fits in one machine word per set and
// whole-powerset sweeps stay cheap.
inline constexpr int kMaxGroundSet = 16;

inline int popcount(mask_t m) { return std::popcount(m); }
inline int lowest_bit(mask_t m) { return std::countr_zero(m); }
inline mask_t bit(int e) { return mask_t{1} << e; }
inline mask_t full_mask(int n) { return n == 0 ? 0 : (mask_t{1} << n) - 1; }

// Next subset of the same cardinality in ascending numeric order (Gosper).
inline mask_t next_same_card(mask_t v) {
  mask_t c = v & (0u - v);
  mask_t r = v + c;
  return r | (((v ^ r) >> 2) / c);
}

// Visits all k-subsets of {0..n-1} in ascending mask order.
template <class Fn>
void for_each_subset_of_card(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(mask_t{0});
    return;
  }
  mask_t limit = bit(n - 1) << 1;  // n >= 1 here since k >= 1
  for (mask_t s = full_mask(k); s < limit; s = next_same_card(s)) fn(s);
}

template <class Fn>
void for_each_element(mask_t m, Fn&& fn) {
  while (m) {
    fn(lowest_bit(m));
    m &= m - 1;
  }
}

// A subset of a ground set {0..n-1}. Carries n so complements and printing
// are well-defined without extra context.
struct ElementSet {
  mask_t mask = 0;
  int n = 0;

  ElementSet() = default;
  ElementSet(mask_t m, int ground) : mask(m), n(ground) {}

  static ElementSet of(std::initializer_list<int> elems, int ground) {
    mask_t m = 0;
    for (int e : elems) {
      if (e < 0 || e >= ground) fail(errc::element_out_of_range, "element " + std::to_string(e));
      m |= bit(e);
    }
    return {m, ground};
  }

  bool contains(int e) const { return (mask >> e) & 1u; }
  int card() const { return popcount(mask); }
  bool empty() const { return mask == 0; }
  ElementSet complement() const { return {full_mask(n) & ~mask, n}; }
  bool subset_of(const ElementSet& o) const { return (mask & ~o.mask) == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(card());
    for_each_element(mask, [&](int e) { out.push_back(e); });
    return out;
  }

  // "0,2,3"; the empty set renders as "-" so fields never collapse.
  std::string csv() const {
    if (mask == 0) return "-";
    std::string out;
    for_each_element(mask, [&](int e) {
      if (!out.empty()) out += ',';
      out += std::to_string(e);
    });
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

}  // namespace splitmat
