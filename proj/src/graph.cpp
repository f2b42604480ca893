#include "nilrigid/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace nilrigid {

int GraphSpec::vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == label) return static_cast<int>(i);
    return -1;
}

bool GraphSpec::has_edge(int i, int j) const {
    return edge_index(i, j) >= 0;
}

int GraphSpec::edge_index(int i, int j) const {
    if (i == j) return -1;
    if (i > j) std::swap(i, j);
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == i && edges[e].second == j) return static_cast<int>(e);
    return -1;
}

std::string GraphSpec::edge_label(int e) const {
    const auto& [i, j] = edges.at(static_cast<std::size_t>(e));
    return vertices[static_cast<std::size_t>(i)] + "-" + vertices[static_cast<std::size_t>(j)];
}

namespace {

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

GraphSpec parse_graph(const std::string& text) {
    GraphSpec g;
    bool saw_vertices = false;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw GraphSyntaxError(lineno, "expected 'vertices:' or 'edge:' directive");
        std::string directive = strip(line.substr(0, colon));
        std::vector<std::string> tokens = split_ws(line.substr(colon + 1));
        if (directive == "vertices") {
            if (saw_vertices)
                throw GraphSyntaxError(lineno, "duplicate 'vertices:' declaration");
            if (tokens.empty())
                throw GraphSyntaxError(lineno, "empty vertex list");
            for (const auto& t : tokens) {
                if (!valid_label(t))
                    throw GraphSyntaxError(lineno, "invalid vertex label '" + t + "'");
                if (g.vertex_index(t) >= 0)
                    throw GraphSyntaxError(lineno, "repeated vertex label '" + t + "'");
                g.vertices.push_back(t);
            }
            saw_vertices = true;
        } else if (directive == "edge") {
            if (tokens.size() != 2)
                throw GraphSyntaxError(lineno, "'edge:' takes exactly two labels");
            for (const auto& t : tokens)
                if (!valid_label(t))
                    throw GraphSyntaxError(lineno, "invalid vertex label '" + t + "'");
            int a = g.vertex_index(tokens[0]);
            if (a < 0) throw UnknownVertexError(lineno, tokens[0]);
            int b = g.vertex_index(tokens[1]);
            if (b < 0) throw UnknownVertexError(lineno, tokens[1]);
            if (a == b) throw SelfLoopError(lineno, tokens[0]);
            if (g.has_edge(a, b)) throw DuplicateEdgeError(lineno, tokens[0], tokens[1]);
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
        } else {
            throw GraphSyntaxError(lineno, "unknown directive '" + directive + "'");
        }
    }
    if (!saw_vertices)
        throw GraphSyntaxError(lineno + 1, "missing 'vertices:' declaration");
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

std::string render_graph(const GraphSpec& g) {
    std::ostringstream os;
    os << "vertices:";
    for (const auto& v : g.vertices) os << ' ' << v;
    os << '\n';
    for (const auto& [i, j] : g.edges)
        os << "edge: " << g.vertices[static_cast<std::size_t>(i)] << ' '
           << g.vertices[static_cast<std::size_t>(j)] << '\n';
    return os.str();
}

namespace {

// Twin test: N(a)\{b} == N(b)\{a}.
bool twins(const GraphSpec& g, int a, int b) {
    int n = static_cast<int>(g.num_vertices());
    for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (g.has_edge(a, c) != g.has_edge(b, c)) return false;
    }
    return true;
}

} // namespace

bool is_coherent(const GraphSpec& g, const std::vector<std::string>& subset) {
    std::set<int> members;
    for (const auto& label : subset) {
        int idx = g.vertex_index(label);
        if (idx < 0) throw UnknownVertexError(label);
        members.insert(idx);
    }
    for (int a : members)
        for (int b : members) {
            if (a == b) continue;
            // every neighbor of a is either b itself or a neighbor of b
            for (int c = 0; c < static_cast<int>(g.num_vertices()); ++c) {
                if (!g.has_edge(a, c)) continue;
                if (c != b && !g.has_edge(b, c)) return false;
            }
        }
    return true;
}

CoherentPartition coherent_components(const GraphSpec& g) {
    int n = static_cast<int>(g.num_vertices());
    CoherentPartition part;
    part.class_of.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (part.class_of[static_cast<std::size_t>(v)] >= 0) continue;
        int cls = static_cast<int>(part.classes.size());
        part.classes.push_back({v});
        part.class_of[static_cast<std::size_t>(v)] = cls;
        for (int u = v + 1; u < n; ++u) {
            if (part.class_of[static_cast<std::size_t>(u)] >= 0) continue;
            if (twins(g, v, u)) {
                part.classes[static_cast<std::size_t>(cls)].push_back(u);
                part.class_of[static_cast<std::size_t>(u)] = cls;
            }
        }
    }
    return part;
}

} // namespace nilrigid
