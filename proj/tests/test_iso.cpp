#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "splitmat/splitmat.hpp"

using namespace splitmat;

static Matroid relabeled(const Matroid& m, const std::vector<int>& perm) {
  std::vector<mask_t> bases;
  for (mask_t b : m.bases()) {
    mask_t nb = 0;
    for (mask_t u = b; u; u &= u - 1) nb |= bit(perm[lowest_bit(u)]);
    bases.push_back(nb);
  }
  return Matroid(detail::Trusted{}, m.n(), m.rank(), std::move(bases));
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(5);
  for (int n = 1; n <= 5; ++n)
    for (const Matroid& m : oracle::naive_matroids(n)) {
      std::string key = detail::serialize_key(canonicalize(m).matroid);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int trial = 0; trial < 4; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(detail::serialize_key(canonicalize(relabeled(m, perm)).matroid) == key);
      }
    }
}

TEST_CASE("the to_canonical map really maps onto the canonical copy") {
  for (const Matroid& m :
       {s1(), s3(), s4(), mw2(), s0(), uniform(3, 7), direct_sum(mw2(), uniform(1, 3))}) {
    Canonical c = canonicalize(m);
    std::vector<mask_t> mapped;
    for (mask_t b : m.bases()) {
      mask_t nb = 0;
      for (mask_t u = b; u; u &= u - 1) nb |= bit(c.to_canonical[lowest_bit(u)]);
      mapped.push_back(nb);
    }
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped == c.matroid.bases());
  }
}

TEST_CASE("isomorphism test agrees with brute force on all small pairs") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<Matroid> all = oracle::naive_matroids(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i; j < all.size(); ++j) {
        bool brute = oracle::brute_isomorphic(all[i], all[j]);
        CHECK(is_isomorphic(all[i], all[j]) == brute);
        CHECK(brute == (i == j));  // the naive list is already deduplicated
      }
  }
}

TEST_CASE("scrambled copies are identified as isomorphic") {
  std::mt19937 rng(17);
  for (const Matroid& m : {s1(), s2(), s3(), s4(), s0()}) {
    std::vector<int> perm(m.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(is_isomorphic(m, relabeled(m, perm)));
  }
  CHECK_FALSE(is_isomorphic(s3(), s4()));
  CHECK_FALSE(is_isomorphic(s1(), s3()));
}

TEST_CASE("duality relations among the named matroids") {
  CHECK(is_isomorphic(dual(s1()), s2()));
  CHECK(is_isomorphic(dual(s2()), s1()));
  CHECK(is_isomorphic(dual(s3()), s3()));
  CHECK(is_isomorphic(dual(s4()), s4()));
  CHECK(is_isomorphic(dual(mw2()), mw2()));
  CHECK(is_isomorphic(dual(s0()), s0()));
}

TEST_CASE("basis counts of the named matroids") {
  CHECK(mw2().bases().size() == 5);
  CHECK(s0().bases().size() == 25);
  CHECK(s1().bases().size() == 12);
  CHECK(s2().bases().size() == 12);
  CHECK(s3().bases().size() == 13);
  CHECK(s4().bases().size() == 14);
}

TEST_CASE("catalog name resolution") {
  CHECK(is_isomorphic(catalog_by_name("mw2"), mw2()));
  CHECK(is_isomorphic(catalog_by_name("S1"), s1()));
  CHECK(catalog_by_name("U_2_4").bases() == uniform(2, 4).bases());
  CHECK_THROWS_AS(catalog_by_name("S9"), Error);
  CHECK_THROWS_AS(catalog_by_name("U_5_4"), Error);
  CHECK(is_catalog_name("U_0_16"));
  CHECK_FALSE(is_catalog_name("U_0_17"));
  CHECK_FALSE(is_catalog_name("dubious"));
}

TEST_CASE("minor search finds simple minors with valid witnesses") {
  struct Case {
    Matroid host, target;
    bool expect;
  };
  std::vector<Case> cases = {
      {uniform(2, 4), uniform(2, 3), true},
      {uniform(2, 4), uniform(1, 2), true},
      {uniform(2, 4), uniform(2, 4), true},
      {uniform(2, 4), mw2(), false},      // uniform hosts have uniform minors only
      {s1(), uniform(3, 4), true},
      {s1(), mw2(), true},
      {s3(), mw2(), true},
      {s0(), mw2(), true},
      {mw2(), uniform(2, 4), false},
      {uniform(3, 6), s1(), false},
  };
  for (const Case& c : cases) {
    std::optional<MinorWitness> w = has_minor(c.host, c.target);
    CHECK(w.has_value() == c.expect);
    if (w) CHECK(witness_checks(c.host, c.target, *w));
  }
}

TEST_CASE("a matroid is a minor of itself via the empty witness") {
  std::optional<MinorWitness> w = has_minor(s4(), s4());
  REQUIRE(w.has_value());
  CHECK(w->contracted.empty());
  CHECK(w->deleted.empty());
  CHECK(witness_checks(s4(), s4(), *w));
}

TEST_CASE("minor relation survives relabeling of the host") {
  std::mt19937 rng(23);
  std::vector<int> perm(6);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Matroid host = relabeled(s1(), perm);
    std::optional<MinorWitness> w = has_minor(host, mw2());
    REQUIRE(w.has_value());
    CHECK(witness_checks(host, mw2(), *w));
  }
}

TEST_CASE("minor search against the brute-force relation on small hosts") {
  // hosts on 5 elements, targets on <= 4: compare against an oracle that
  // tries every (contract, delete) pair and every bijection
  std::vector<Matroid> hosts = oracle::naive_matroids(5);
  std::vector<Matroid> targets = oracle::naive_matroids(4);
  auto brute_has_minor = [](const Matroid& host, const Matroid& target) {
    int c = host.rank() - target.rank();
    int d = host.n() - target.n() - c;
    if (c < 0 || d < 0) return false;
    bool found = false;
    for_each_subset_of_card(host.n(), c, [&](mask_t cm) {
      if (found || host.rank_of(cm) != c) return;
      mask_t rest = host.ground_mask() & ~cm;
      for (mask_t dm = rest;; dm = (dm - 1) & rest) {
        if (popcount(dm) == d) {
          Matroid minor = deletion(contraction(host, cm).matroid,
                                   detail::compact_mask(dm, host.ground_mask() & ~cm))
                              .matroid;
          if (oracle::brute_isomorphic(minor, target)) {
            found = true;
            return;
          }
        }
        if (dm == 0) break;
      }
    });
    return found;
  };
  int positives = 0;
  for (const Matroid& host : hosts)
    for (const Matroid& target : targets) {
      std::optional<MinorWitness> w = has_minor(host, target);
      bool brute = brute_has_minor(host, target);
      INFO("host bases " << host.bases().size() << " target bases " << target.bases().size());
      CHECK(w.has_value() == brute);
      if (w) {
        CHECK(witness_checks(host, target, *w));
        ++positives;
      }
    }
  CHECK(positives > 100);  // the relation is dense enough to be a real test
}

TEST_CASE("excluded-minor verification singles out the right matroids") {
  for (const NamedMatroid& nm : excluded_minors()) {
    INFO(nm.name);
    CHECK(verify_excluded_minor(nm.matroid));
  }
  CHECK_FALSE(verify_excluded_minor(mw2()));          // split, so not excluded
  CHECK_FALSE(verify_excluded_minor(uniform(2, 4)));  // split
  CHECK_FALSE(verify_excluded_minor(direct_sum(s1(), uniform(1, 1))));  // non-minimal
}

TEST_CASE("the excluded-minor list is closed under duality") {
  std::vector<NamedMatroid> list = excluded_minors();
  for (const NamedMatroid& nm : list) {
    Matroid d = dual(nm.matroid);
    bool found = false;
    for (const NamedMatroid& other : list)
      if (is_isomorphic(d, other.matroid)) found = true;
    INFO("dual of " << nm.name);
    CHECK(found);
  }
}

TEST_CASE("minor relation is transitive on witnesses") {
  // S1 has MW2 as a minor; MW2 has U_{1,2} as a minor; S1 must too
  REQUIRE(has_minor(s1(), mw2()));
  REQUIRE(has_minor(mw2(), uniform(1, 2)));
  CHECK(has_minor(s1(), uniform(1, 2)).has_value());
}
