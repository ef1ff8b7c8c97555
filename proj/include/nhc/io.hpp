#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nhc/graph.hpp"

namespace nhc {

enum class EdgeListFormat { automatic, plain, matrix_market };

/// Graph plus the original label of every dense node id.
struct LabelledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// Parses a whitespace-separated edge list, one pair per line. Lines
/// starting with '#' or '%' are comments; columns after the second are
/// ignored. Labels are remapped to dense ids: numerically ascending when
/// every label is a non-negative integer, otherwise in order of first
/// appearance. A "# nodes: N" comment (as emitted by write_edgelist) keeps
/// integer labels verbatim and fixes n = N, so isolated nodes survive a
/// round trip. With MatrixMarket input the first non-comment line is the
/// size header and is skipped.
LabelledGraph parse_edgelist(std::istream& in, EdgeListFormat format = EdgeListFormat::automatic);
LabelledGraph read_edgelist(const std::filesystem::path& path,
                            EdgeListFormat format = EdgeListFormat::automatic);

/// "# nodes: n" followed by the canonical edge list.
void write_edgelist(std::ostream& out, const Graph& g);
void write_edgelist(const std::filesystem::path& path, const Graph& g);

}  // namespace nhc
