#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhc/graph.hpp"

namespace nhc {

enum class Family { er, rgg, rhgg, rhg };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

/// Parameters for one random graph. `target` is the edge probability p for
/// ER and the target density for the geometric and configuration families.
struct ModelSpec {
  Family family = Family::er;
  std::size_t n = 0;
  double target = 0.0;
  unsigned dims = 3;
  double mu = 0.0;
  double sigma_h = 0.2;
  std::uint64_t seed = 0;
  /// RHG only. Empty means: take the degree sequence of an RHGG drawn with
  /// the same n, target, dims, mu, sigma_h and seed.
  std::vector<Degree> degree_sequence;
};

void validate(const ModelSpec& spec);
Graph generate(const ModelSpec& spec);

/// round(density * n(n-1)/2), clamped to the number of pairs.
std::size_t target_edge_count(std::size_t n, double density);

/// G(n, p): every unordered pair is an edge independently with probability p.
Graph gen_er(std::size_t n, double p, std::uint64_t seed);

/// n uniform points in [0,1]^q; the m = target_edge_count(n, density) pairs
/// with the largest inverse Euclidean distance become edges. Ties go to the
/// lexicographically smaller pair.
Graph gen_rgg(std::size_t n, double density, unsigned q, std::uint64_t seed);

/// As gen_rgg, but pair weights are w_ij = d_ij (s_i + s_j), with d_ij the
/// inverse distance and s_i ~ LogNormal(mu, sigma_h). Coordinates are drawn
/// from the same stream as gen_rgg, so sigma_h = 0 reproduces its edge set.
Graph gen_rhgg(std::size_t n, double density, unsigned q, double mu, double sigma_h,
               std::uint64_t seed);

/// Configuration model: random stub pairing, then degree-preserving double
/// edge swaps until the graph is simple. The output degree sequence equals
/// the input exactly. Throws for non-graphical input or when the swap budget
/// (100 m attempts) runs out.
Graph gen_config(std::span<const Degree> degree_sequence, std::uint64_t seed);

/// Erdos-Gallai test.
bool is_graphical(std::span<const Degree> degree_sequence);

/// Degree sequence of `g` indexed by node id.
std::vector<Degree> degree_sequence(const Graph& g);

}  // namespace nhc
