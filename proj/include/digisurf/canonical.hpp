#pragma once

// Exact canonical form of a graph by colour refinement plus individualization
// backtracking. Two graphs get equal keys iff they are isomorphic.
//
// The search tree is built from labeling-invariant choices only (refinement
// signatures, smallest non-trivial cell first), so its set of leaves is the
// same for every relabeling of the input; the key is the smallest leaf
// certificate. Automorphisms found at equal leaves prune sibling branches that
// lie in the same orbit of the prefix stabilizer.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "digisurf/graph.hpp"

namespace digisurf {

struct CanonicalKey {
  std::string bytes;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};

namespace detail {

// colour[v] is the start position of v's cell in the ordered partition.
using Colouring = std::vector<Index>;

inline std::size_t cell_count(const Colouring& colour) {
  std::vector<char> used(colour.size(), 0);
  std::size_t cells = 0;
  for (Index c : colour) {
    if (!used[c]) {
      used[c] = 1;
      ++cells;
    }
  }
  return cells;
}

// Equitable refinement: split cells by the multiset of neighbour colours
// until stable. New cells inside an old cell are ordered by signature.
inline void refine(const DigitalGraph& g, Colouring& colour) {
  const std::size_t n = g.size();
  std::size_t cells = cell_count(colour);
  std::vector<std::vector<Index>> sig(n);
  std::vector<Index> order(n);
  while (true) {
    for (Index v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      for (Index w : g.neighbors(v)) s.push_back(colour[w]);
      std::sort(s.begin(), s.end());
    }
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (colour[a] != colour[b]) return colour[a] < colour[b];
      return sig[a] < sig[b];
    });
    Colouring next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Index v = order[i];
      if (i == 0) {
        next[v] = 0;
      } else {
        const Index u = order[i - 1];
        next[v] = (colour[u] == colour[v] && sig[u] == sig[v])
                      ? next[u]
                      : static_cast<Index>(i);
      }
    }
    colour = std::move(next);
    const std::size_t now = cell_count(colour);
    if (now == cells) return;
    cells = now;
  }
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const DigitalGraph& g) : g_(g) {}

  // Returns position[v] for the canonical labeling.
  std::vector<Index> run() {
    Colouring colour(g_.size(), 0);
    std::vector<Index> prefix;
    descend(colour, prefix);
    return best_position_;
  }

  const std::string& certificate() const { return best_cert_; }

 private:
  std::string leaf_certificate(const std::vector<Index>& position) const {
    const std::size_t n = g_.size();
    std::vector<Index> at(n);
    for (Index v = 0; v < n; ++v) at[position[v]] = v;
    std::string cert;
    cert.reserve(8 + n * n / 16);
    for (int shift = 0; shift < 64; shift += 8) {
      cert.push_back(static_cast<char>((static_cast<std::uint64_t>(n) >> shift) & 0xff));
    }
    // Row i lists which later positions are adjacent, packed 8 per byte.
    unsigned char acc = 0;
    int bits = 0;
    std::vector<char> row(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(row.begin(), row.end(), 0);
      for (Index w : g_.neighbors(at[i])) row[position[w]] = 1;
      for (std::size_t j = i + 1; j < n; ++j) {
        acc = static_cast<unsigned char>((acc << 1) | row[j]);
        if (++bits == 8) {
          cert.push_back(static_cast<char>(acc));
          acc = 0;
          bits = 0;
        }
      }
    }
    if (bits > 0) cert.push_back(static_cast<char>(acc << (8 - bits)));
    return cert;
  }

  void leaf(const Colouring& position) {
    std::string cert = leaf_certificate(position);
    if (!have_best_ || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_position_ = position;
      have_best_ = true;
      best_at_.assign(position.size(), 0);
      for (Index v = 0; v < position.size(); ++v) best_at_[position[v]] = v;
    } else if (cert == best_cert_) {
      // Same certificate: v ↦ the vertex holding v's position in the best leaf.
      std::vector<Index> gamma(position.size());
      for (Index v = 0; v < position.size(); ++v) gamma[v] = best_at_[position[v]];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  static Index find(std::vector<Index>& parent, Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Orbit representative map for the subgroup generated by the known
  // automorphisms that fix every point of `prefix`.
  std::vector<Index> stabilizer_orbits(const std::vector<Index>& prefix) {
    std::vector<Index> parent(g_.size());
    std::iota(parent.begin(), parent.end(), Index{0});
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(),
                               [&](Index p) { return gamma[p] == p; });
      if (!fixes) continue;
      for (Index v = 0; v < gamma.size(); ++v) {
        const Index a = find(parent, v);
        const Index b = find(parent, gamma[v]);
        if (a != b) parent[a] = b;
      }
    }
    return parent;
  }

  void descend(Colouring colour, std::vector<Index>& prefix) {
    refine(g_, colour);
    const std::size_t n = g_.size();

    // Smallest non-singleton cell; ties broken by position.
    std::vector<Index> cell_size(n, 0);
    for (Index c : colour) ++cell_size[c];
    std::optional<Index> target;
    for (Index c = 0; c < n; ++c) {
      if (cell_size[c] > 1 && (!target || cell_size[c] < cell_size[*target])) {
        target = c;
      }
    }
    if (!target) {
      leaf(colour);
      return;
    }

    std::vector<Index> members;
    for (Index v = 0; v < n; ++v) {
      if (colour[v] == *target) members.push_back(v);
    }
    std::vector<Index> explored;
    std::size_t seen_generators = 0;
    std::vector<Index> orbit;
    for (Index w : members) {
      if (!explored.empty()) {
        if (orbit.empty() || seen_generators != automorphisms_.size()) {
          orbit = stabilizer_orbits(prefix);
          seen_generators = automorphisms_.size();
        }
        const Index rep = find(orbit, w);
        const bool redundant = std::any_of(
            explored.begin(), explored.end(),
            [&](Index e) { return find(orbit, e) == rep; });
        if (redundant) continue;
      }
      Colouring child = colour;
      for (Index v : members) {
        if (v != w) child[v] = *target + 1;
      }
      prefix.push_back(w);
      descend(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(w);
    }
  }

  const DigitalGraph& g_;
  bool have_best_ = false;
  std::string best_cert_;
  std::vector<Index> best_position_;
  std::vector<Index> best_at_;
  std::vector<std::vector<Index>> automorphisms_;
};

}  // namespace detail

/// Canonical labeling: position[v] for every point index v.
inline std::vector<Index> canonical_labeling(const DigitalGraph& g) {
  return detail::CanonicalSearch(g).run();
}

inline CanonicalKey canonical_key(const DigitalGraph& g) {
  detail::CanonicalSearch search(g);
  search.run();
  return CanonicalKey{search.certificate()};
}

inline bool isomorphic(const DigitalGraph& g, const DigitalGraph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return false;
  auto degrees = [](const DigitalGraph& x) {
    std::vector<std::size_t> d;
    for (Index v = 0; v < x.size(); ++v) d.push_back(x.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(g) != degrees(h)) return false;
  return canonical_key(g) == canonical_key(h);
}

/// Hex encoding of a key, for diagnostics and JSON.
inline std::string to_hex(const CanonicalKey& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.bytes.size() * 2);
  for (unsigned char c : key.bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

}  // namespace digisurf
