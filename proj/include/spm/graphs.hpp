#ifndef SPM_GRAPHS_HPP
#define SPM_GRAPHS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spm/pattern.hpp"
#include "spm/sign.hpp"

namespace spm {

// Directed cycle (i1,...,ik), arcs i1->i2->...->ik->i1, stored with the
// minimum vertex first. A loop is the k=1 case.
struct SimpleCycle {
    std::vector<int> vertices;
    int product_sign = 1;  // product of arc signs along the cycle
    int cycle_sign = 1;    // (-1)^(k-1) * product_sign

    int length() const { return static_cast<int>(vertices.size()); }
    bool operator==(const SimpleCycle& o) const { return vertices == o.vertices; }
};

// Vertex-disjoint union of simple cycles. Parts are kept sorted by minimum
// vertex so that equal composites compare equal.
struct CompositeCycle {
    std::vector<SimpleCycle> parts;

    int length() const;
    int sign() const;  // product of part cycle signs
    std::uint64_t vertex_mask() const;
    std::string to_string() const;  // e.g. "(1,2)(3,4)" with 1-based vertices
};

std::string cycle_to_string(const SimpleCycle& c);

// Arc-level view of a pattern: arc (i,j) present iff p(i,j) != 0.
class SignedDigraph {
public:
    explicit SignedDigraph(const SignPattern& p);

    int size() const { return n_; }
    Sign arc(int i, int j) const { return arcs_[static_cast<std::size_t>(i) * n_ + j]; }
    bool has_arc(int i, int j) const { return arc(i, j) != Sign::Zero; }
    const std::vector<int>& out_neighbors(int i) const { return out_[i]; }

private:
    int n_;
    std::vector<Sign> arcs_;
    std::vector<std::vector<int>> out_;
};

struct UEdge {
    int u, v;  // u < v
    Sign sign;
};

// Edge-level view of a combinatorially symmetric pattern; edge sign is the
// sign of p(i,j)*p(j,i).
class SignedUGraph {
public:
    explicit SignedUGraph(const SignPattern& p);
    SignedUGraph(int n, std::vector<UEdge> edges);

    int size() const { return n_; }
    const std::vector<UEdge>& edges() const { return edges_; }
    Sign edge_sign(int u, int v) const;  // Zero when absent
    bool has_edge(int u, int v) const { return edge_sign(u, v) != Sign::Zero; }
    const std::vector<int>& neighbors(int u) const { return adj_[u]; }
    int degree(int u) const { return static_cast<int>(adj_[u].size()); }

private:
    int n_;
    std::vector<UEdge> edges_;
    std::vector<std::vector<int>> adj_;
};

// --- directed cycle enumeration ---------------------------------------------

// All simple directed cycles (loops included) of length <= max_len, each once,
// canonical rotation starting at the minimum vertex. Deterministic order:
// by minimum vertex, then lexicographic vertex sequence.
std::vector<SimpleCycle> simple_cycles(const SignedDigraph& d, int max_len);

// Visits every composite cycle (nonempty set of pairwise vertex-disjoint
// simple cycles) once, in deterministic order; the callback returns false to
// stop early. When exact_len is set, only composites of that total length are
// reported. Throws CapExceeded if d.size() > cap.
void enumerate_composite_cycles(const SignedDigraph& d, std::optional<int> exact_len, int cap,
                                const std::function<bool(const CompositeCycle&)>& visit);

std::vector<CompositeCycle> composite_cycles(const SignedDigraph& d, std::optional<int> exact_len,
                                             int cap = 12);

// Maximal total length of a composite cycle; 0 when the digraph is acyclic.
int max_composite_cycle_length(const SignedDigraph& d, int cap = 12);

// --- maximal signed paths ----------------------------------------------------

struct MaximalSignedPath {
    std::vector<std::pair<int, int>> edges;  // consecutive, equal-signed
    Sign sign = Sign::Zero;

    int length() const { return static_cast<int>(edges.size()); }
};

// Decomposition of the edge sequence of a path or cycle graph into maximal
// constant-sign runs. For a cycle the runs are computed cyclically; if every
// edge has the same sign, the single run is split to start at the edge
// containing the minimum vertex. Throws std::invalid_argument for any other
// topology.
std::vector<MaximalSignedPath> maximal_signed_paths(const SignedUGraph& g);

// Run decomposition of a plain cyclic sign word, used for the per-cycle
// variants of the structural checks.
std::vector<int> cyclic_run_lengths(const std::vector<Sign>& word, std::vector<Sign>* run_signs);

// --- matchings -----------------------------------------------------------------

struct Matching {
    std::vector<UEdge> edges;
    int length() const { return static_cast<int>(edges.size()); }
};

// Visits every matching (the empty one included), optionally restricted to
// edges of one sign and/or to a subset of edges. Deterministic order.
void enumerate_matchings(const SignedUGraph& g, std::optional<Sign> sign_filter,
                         const std::optional<std::vector<UEdge>>& within,
                         const std::function<bool(const Matching&)>& visit);

std::vector<Matching> matchings(const SignedUGraph& g, std::optional<Sign> sign_filter = {},
                                const std::optional<std::vector<UEdge>>& within = {});

Matching max_matching(const SignedUGraph& g, std::optional<Sign> sign_filter = {});

// --- undirected cycles and metrics ------------------------------------------------

struct UCycle {
    std::vector<int> vertices;  // cyclic order, min vertex first, direction canonical
    int length() const { return static_cast<int>(vertices.size()); }
};

// Edge signs along the cycle: entry t is the sign of {v_t, v_{t+1}}.
std::vector<Sign> cycle_edge_signs(const SignedUGraph& g, const UCycle& c);

struct CyclePairRelation {
    int c1 = 0, c2 = 0;       // indices into GraphMetrics::cycles
    bool path_adjacent = false;
    int distance = -1;        // connecting path length; 0 when the cycles share a vertex
};

struct GraphMetrics {
    std::vector<int> leaves;
    std::vector<std::vector<int>> dist;          // all-pairs BFS distances, -1 unreachable
    std::vector<UCycle> cycles;                  // all simple cycles of length >= 3
    std::vector<CyclePairRelation> cycle_pairs;  // one entry per unordered pair
    std::vector<std::vector<int>> leaf_cycle_dist;  // [leaf index][cycle index]
};

// Requires a connected graph. Cycle enumeration is exponential in general and
// guarded by the cap.
GraphMetrics graph_metrics(const SignedUGraph& g, int cap = 12);

int dist_to_cycle(const GraphMetrics& m, int vertex, const UCycle& c);

}  // namespace spm

#endif
