#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilrigid/errors.hpp"

namespace nilrigid {

// A finite simple graph (S, E). Vertex order is the declaration order and
// fixes every basis ordering downstream; edges are stored as index pairs
// (i, j) with i < j, sorted lexicographically, which fixes the W basis.
struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;

    int vertex_index(const std::string& label) const; // -1 when absent
    bool has_edge(int i, int j) const;
    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_edges() const { return edges.size(); }
    // Index into `edges` for the unordered pair {i, j}, or -1 if not an edge.
    int edge_index(int i, int j) const;
    std::string edge_label(int e) const;

    bool operator==(const GraphSpec& o) const = default;
};

// Line-oriented DSL: '#' comment lines, one `vertices: a b c` declaration,
// then `edge: a b` lines. Labels match [A-Za-z0-9_]+. Errors carry the
// offending line number.
GraphSpec parse_graph(const std::string& text);

// Canonical DSL text; parse_graph(render_graph(g)) == g.
std::string render_graph(const GraphSpec& g);

// True iff for every ordered pair (alpha, beta) of distinct subset members
// and every vertex gamma adjacent to alpha, either gamma == beta or gamma is
// adjacent to beta; gamma ranges over all of S. Equivalently: all pairs in
// the subset are twins, N(alpha)\{beta} = N(beta)\{alpha}.
bool is_coherent(const GraphSpec& g, const std::vector<std::string>& subset);

struct CoherentPartition {
    std::vector<std::vector<int>> classes; // vertex indices, each class sorted
    std::vector<int> class_of;             // vertex index -> class index

    bool operator==(const CoherentPartition& o) const = default;
};

// Partition of S into the equivalence classes of the twin relation; classes
// are ordered by their smallest vertex index. Every class is coherent and
// maximal among twin-closed coherent sets.
CoherentPartition coherent_components(const GraphSpec& g);

} // namespace nilrigid
