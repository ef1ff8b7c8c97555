#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhc/graph.hpp"

namespace nhc {

/// How absent edges are weighted when growing a graph:
///   random       1
///   hierarchical k_i + k_j
///   similarity   |g_i & g_j| / |g_i | g_j|  (Jaccard)
///   combined     |g_i & g_j|
enum class Mechanism { random, hierarchical, similarity, combined };

inline constexpr Mechanism kAllMechanisms[] = {Mechanism::random, Mechanism::hierarchical,
                                               Mechanism::similarity, Mechanism::combined};

std::string_view to_string(Mechanism m);
Mechanism parse_mechanism(std::string_view name);

struct PairWeight {
  Edge pair;
  double weight = 0.0;
};

/// Unnormalised weights over non-edges. Only pairs with positive weight are
/// listed, in lexicographic order; every unlisted non-edge has weight 0.
/// When all weights vanish the map falls back to uniform weight 1 over every
/// non-edge and sets `uniform_fallback`.
struct EdgeWeights {
  std::vector<PairWeight> pairs;
  long double total = 0.0L;
  bool uniform_fallback = false;

  double probability(std::size_t idx) const {
    return static_cast<double>(pairs[idx].weight / total);
  }
};

/// Throws when g is complete.
EdgeWeights edge_weights(const Graph& g, Mechanism mechanism);

/// Adds `count` distinct non-edges drawn without replacement with
/// probability proportional to their weights in `g`. When fewer than
/// `count` non-edges have positive weight, the remainder is drawn uniformly
/// from the zero-weight non-edges.
Graph add_edges(const Graph& g, Mechanism mechanism, std::size_t count, std::uint64_t seed);

/// Whether sweep fractions grow the edge count relative to the base
/// (m = m0 (1 + f)) or add absolute density (m = m0 + f n(n-1)/2).
enum class GrowthMode { relative, absolute };

struct SweepStep {
  double fraction = 0.0;
  std::size_t edges = 0;
  double r_hat = 0.0;
};

struct SweepTrace {
  Mechanism mechanism = Mechanism::random;
  std::string base_id;
  std::vector<SweepStep> steps;
};

/// 0, 0.001, ..., 0.020.
std::vector<double> default_fractions();

/// Grows `g` step by step to each fraction, recomputing weights once per
/// step and recording the normalised complexity after each one. Edges
/// accumulate across steps.
SweepTrace density_sweep(const Graph& g, Mechanism mechanism, std::span<const double> fractions,
                         std::uint64_t seed, GrowthMode mode = GrowthMode::relative,
                         std::string base_id = {});

}  // namespace nhc
