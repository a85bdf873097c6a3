#pragma once

// Clique (complete subgraph) enumeration and the clique Euler characteristic
// χ(G) = Σ_{k≥1} (−1)^{k+1} · #(k-cliques).

#include <cstdint>
#include <string>
#include <vector>

#include "digisurf/graph.hpp"

namespace digisurf {

/// Enumeration aborts with ResourceError after this many cliques. Digital
/// 2-manifolds are K4-free, so their clique count is below 4·|G|²; the bound
/// only triggers on dense inputs where exhaustive enumeration is hopeless.
inline constexpr std::uint64_t kDefaultCliqueLimit = 50'000'000;

/// counts[k] = number of k-point cliques (counts[0] is always 0).
inline std::vector<std::uint64_t> clique_counts(
    const DigitalGraph& g, std::uint64_t limit = kDefaultCliqueLimit) {
  std::vector<std::uint64_t> counts(2, 0);
  std::uint64_t total = 0;

  // Extend cliques only with higher-indexed common neighbours so every clique
  // is produced exactly once.
  auto extend = [&](auto&& self, std::size_t depth,
                    const std::vector<Index>& candidates) -> void {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (++total > limit) {
        throw ResourceError("clique enumeration exceeded " +
                            std::to_string(limit) + " cliques");
      }
      if (counts.size() <= depth + 1) counts.resize(depth + 2, 0);
      ++counts[depth + 1];
      const Index v = candidates[c];
      std::vector<Index> next;
      for (std::size_t d = c + 1; d < candidates.size(); ++d) {
        if (g.adjacent(v, candidates[d])) next.push_back(candidates[d]);
      }
      if (!next.empty()) self(self, depth + 1, next);
    }
  };

  for (Index v = 0; v < g.size(); ++v) {
    if (++total > limit) {
      throw ResourceError("clique enumeration exceeded " +
                          std::to_string(limit) + " cliques");
    }
    ++counts[1];
    std::vector<Index> higher;
    for (Index w : g.neighbors(v)) {
      if (w > v) higher.push_back(w);
    }
    extend(extend, 1, higher);
  }
  return counts;
}

inline std::int64_t euler_characteristic(
    const DigitalGraph& g, std::uint64_t limit = kDefaultCliqueLimit) {
  const auto counts = clique_counts(g, limit);
  std::int64_t chi = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    const auto c = static_cast<std::int64_t>(counts[k]);
    chi += (k % 2 == 1) ? c : -c;
  }
  return chi;
}

}  // namespace digisurf
