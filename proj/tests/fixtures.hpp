#pragma once

// Named posets and GWP specs shared by the unit tests and the acceptance runner.

#include <vector>

#include "blocklat/groups.hpp"
#include "blocklat/gwp.hpp"
#include "blocklat/poset.hpp"

namespace fixture {

using blocklat::GwpSpec;
using blocklat::PermGroup;
using blocklat::Poset;

/// m1 ⊏ m3 and m2 ⊏ m3.
inline Poset v_poset() { return Poset::from_covers(3, {{0, 2}, {1, 2}}); }

inline GwpSpec v_c2() {
  const auto c2 = blocklat::groups::cyclic(2);
  return GwpSpec(v_poset(), {c2, c2, c2});
}

inline GwpSpec chain(const std::vector<PermGroup>& comps) { return GwpSpec(Poset::chain(comps.size()), comps); }
inline GwpSpec antichain(const std::vector<PermGroup>& comps) { return GwpSpec(Poset::antichain(comps.size()), comps); }

/// Every partial order on {0..n-1}, as ⊑ matrices.
inline std::vector<Poset> all_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<Poset> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1u) leq[pairs[k].first][pairs[k].second] = true;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (leq[i][j] && leq[j][k] && !leq[i][k]) ok = false;
      }
    if (!ok) continue;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i + 1));
    out.emplace_back(std::move(labels), std::move(leq));
  }
  return out;
}

}  // namespace fixture
