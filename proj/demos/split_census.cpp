// Census of split vs non-split matroids on up to six elements, with the
// smallest witnesses printed in full.
#include <iostream>

#include "splitmat/splitmat.hpp"

int main() {
  using namespace splitmat;
  Catalog cat = build_catalog(6);
  cat.for_each([](const CatalogShard& shard, int idx, const Matroid& m) {
    SplitReport rep = is_split(m);
    if (rep.verdict) return;
    std::cout << "non-split on n=" << shard.n << " r=" << shard.r << " (#" << idx << "):\n"
              << matroid_to_text(m) << "\n";
  });
  return 0;
}
