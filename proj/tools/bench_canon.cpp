#include <chrono>
#include <iostream>
#include <random>

#include "splitmat/splitmat.hpp"

using namespace splitmat;
using Clock = std::chrono::steady_clock;

static void bench(const char* label, const Matroid& m, int reps) {
  auto t0 = Clock::now();
  std::string key;
  for (int i = 0; i < reps; ++i) key = detail::serialize_key(canonicalize(m).matroid);
  double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count() / reps;
  std::cout << label << ": " << us << " us/call\n";
}

int main() {
  bench("U48", uniform(4, 8), 5);

  // Binary affine cube: bases are the 4-subsets of {0..7} that are not
  // affine planes (xor of the four points nonzero).
  std::vector<mask_t> bases;
  for_each_subset_of_card(8, 4, [&](mask_t s) {
    int x = 0;
    for (int e : ElementSet(s, 8).elements()) x ^= e;
    bool plane = x == 0;
    // points are 0..7 as binary vectors; a 4-set is affine iff a^b^c^d == 0
    if (!plane) bases.push_back(s);
  });
  Matroid ag(detail::Trusted{}, 8, 4, bases);
  std::cout << "AG32 bases=" << ag.bases().size() << "\n";
  bench("AG32", ag, 3);

  // Sparse paving on 8 points: knock out a few scattered 4-subsets.
  std::mt19937 rng(7);
  std::vector<mask_t> all;
  for_each_subset_of_card(8, 4, [&](mask_t s) { all.push_back(s); });
  std::vector<mask_t> knocked;
  for (mask_t s : all) {
    bool hit = false;
    for (mask_t t : knocked)
      if (popcount(s & t) >= 3) hit = true;
    if (!hit && std::uniform_int_distribution<int>(0, 4)(rng) == 0) knocked.push_back(s);
  }
  std::vector<mask_t> sp;
  for (mask_t s : all)
    if (std::find(knocked.begin(), knocked.end(), s) == knocked.end()) sp.push_back(s);
  Matroid m2(detail::Trusted{}, 8, 4, sp);
  std::cout << "SP bases=" << m2.bases().size() << "\n";
  bench("SP", m2, 3);

  bench("S0", s0(), 10);
  bench("U47", uniform(4, 7), 10);
  return 0;
}
