#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "splitmat/matroid.hpp"

namespace splitmat {

inline Matroid uniform(int r, int n) {
  if (n < 0 || n > kMaxGroundSet)
    fail(errc::ground_set_too_large, "uniform matroid on " + std::to_string(n) + " elements");
  if (r < 0 || r > n)
    fail(errc::element_out_of_range, "uniform rank " + std::to_string(r) + " on " + std::to_string(n));
  std::vector<mask_t> bases;
  bases.reserve(binomial(n, r));
  for_each_subset_of_card(n, r, [&](mask_t s) { bases.push_back(s); });
  return Matroid(detail::Trusted{}, n, r, std::move(bases));
}

// Rank 2 on {0..3} with 2 and 3 parallel: every 2-subset except {2,3} is a
// basis. Cycle matroid of a triangle with one doubled edge; self-dual.
inline Matroid mw2() {
  std::vector<mask_t> bases;
  for_each_subset_of_card(4, 2, [&](mask_t s) {
    if (s != (bit(2) | bit(3))) bases.push_back(s);
  });
  return Matroid::validate(4, 2, std::move(bases));
}

namespace detail {
// Rank-3 matroids on 6 elements given by their dependent triples.
template <class DependentFn>
Matroid rank3_on6(DependentFn&& dependent) {
  std::vector<mask_t> bases;
  for_each_subset_of_card(6, 3, [&](mask_t s) {
    if (!dependent(s)) bases.push_back(s);
  });
  return Matroid::validate(6, 3, std::move(bases));
}
}  // namespace detail

// Parallel pairs {0,1} and {2,3}; bases are the 12 triples containing neither
// pair. Simplifies to U_{3,4}.
inline Matroid s1() {
  const mask_t p1 = bit(0) | bit(1), p2 = bit(2) | bit(3);
  return detail::rank3_on6([&](mask_t s) { return (s & p1) == p1 || (s & p2) == p2; });
}

inline Matroid s2() { return dual(s1()); }

// Parallel pair {2,3}; rank-2 flats {0,1,2,3} and {0,4,5}; 13 bases.
inline Matroid s3() {
  const mask_t pair = bit(2) | bit(3);
  const mask_t line1 = bit(0) | bit(1) | bit(2) | bit(3);
  const mask_t line2 = bit(0) | bit(4) | bit(5);
  return detail::rank3_on6([&](mask_t s) {
    return (s & ~line1) == 0 || s == line2 || (s & pair) == pair;
  });
}

// Parallel pair {2,3}; rank-2 flat {0,1,2,3}; {4,5} closed; 14 bases.
inline Matroid s4() {
  const mask_t pair = bit(2) | bit(3);
  const mask_t line = bit(0) | bit(1) | bit(2) | bit(3);
  return detail::rank3_on6([&](mask_t s) { return (s & ~line) == 0 || (s & pair) == pair; });
}

inline Matroid s0() { return direct_sum(mw2(), mw2()); }

struct NamedMatroid {
  std::string name;
  Matroid matroid;
};

// The five matroids outside the split class that are minimal with that
// property; every verdict mismatch hunt runs against these.
inline std::vector<NamedMatroid> excluded_minors() {
  return {{"S0", s0()}, {"S1", s1()}, {"S2", s2()}, {"S3", s3()}, {"S4", s4()}};
}

// Accepts U_r_n, MW2, S0..S4, case-insensitive.
inline Matroid catalog_by_name(const std::string& raw) {
  std::string name;
  for (char ch : raw) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (name == "MW2") return mw2();
  if (name.size() == 2 && name[0] == 'S' && name[1] >= '0' && name[1] <= '4') {
    switch (name[1]) {
      case '0': return s0();
      case '1': return s1();
      case '2': return s2();
      case '3': return s3();
      default: return s4();
    }
  }
  if (name.size() >= 5 && name[0] == 'U' && name[1] == '_') {
    std::size_t second = name.find('_', 2);
    if (second != std::string::npos && second > 2 && second + 1 < name.size()) {
      std::string rs = name.substr(2, second - 2), ns = name.substr(second + 1);
      auto numeric = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
      };
      if (numeric(rs) && numeric(ns) && rs.size() <= 2 && ns.size() <= 2) {
        int r = std::stoi(rs), n = std::stoi(ns);
        if (r <= n && n <= kMaxGroundSet) return uniform(r, n);
      }
    }
  }
  fail(errc::unknown_name, "no catalog matroid named '" + raw + "'");
}

inline bool is_catalog_name(const std::string& name) {
  try {
    catalog_by_name(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace splitmat
