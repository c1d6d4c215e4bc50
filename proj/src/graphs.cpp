#include "spm/graphs.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "spm/errors.hpp"

namespace spm {

int CompositeCycle::length() const {
    int l = 0;
    for (const auto& c : parts) l += c.length();
    return l;
}

int CompositeCycle::sign() const {
    int s = 1;
    for (const auto& c : parts) s *= c.cycle_sign;
    return s;
}

std::uint64_t CompositeCycle::vertex_mask() const {
    std::uint64_t m = 0;
    for (const auto& c : parts)
        for (int v : c.vertices) m |= std::uint64_t{1} << v;
    return m;
}

std::string cycle_to_string(const SimpleCycle& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c.vertices[i] + 1);
    }
    s += ")";
    return s;
}

std::string CompositeCycle::to_string() const {
    std::string s;
    for (const auto& c : parts) s += cycle_to_string(c);
    return s;
}

SignedDigraph::SignedDigraph(const SignPattern& p)
    : n_(p.size()), arcs_(static_cast<std::size_t>(p.size()) * p.size()), out_(p.size()) {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            arcs_[static_cast<std::size_t>(i) * n_ + j] = p.at(i, j);
            if (p.at(i, j) != Sign::Zero) out_[i].push_back(j);
        }
}

SignedUGraph::SignedUGraph(const SignPattern& p) : n_(p.size()), adj_(p.size()) {
    if (!is_combinatorially_symmetric(p))
        throw std::invalid_argument("undirected view requires a combinatorially symmetric pattern");
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (p.at(i, j) != Sign::Zero) {
                edges_.push_back({i, j, multiply(p.at(i, j), p.at(j, i))});
                adj_[i].push_back(j);
                adj_[j].push_back(i);
            }
}

SignedUGraph::SignedUGraph(int n, std::vector<UEdge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const UEdge& a, const UEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

Sign SignedUGraph::edge_sign(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (const auto& e : edges_)
        if (e.u == u && e.v == v) return e.sign;
    return Sign::Zero;
}

namespace {

int cycle_sign_of(int length, int product_sign) {
    return (length % 2 == 0) ? -product_sign : product_sign;
}

// DFS enumeration of the simple cycles whose minimum vertex is `root`: only
// vertices >= root may appear, so every cycle is reported exactly once with
// its canonical rotation.
struct CycleSearch {
    const SignedDigraph& d;
    int root;
    int max_len;
    std::vector<char> on_path;
    std::vector<int> path;
    int product = 1;
    std::vector<SimpleCycle>& out;

    CycleSearch(const SignedDigraph& dig, int r, int ml, std::vector<SimpleCycle>& sink)
        : d(dig), root(r), max_len(ml), on_path(dig.size(), 0), out(sink) {}

    void run() {
        on_path[root] = 1;
        path.push_back(root);
        extend();
        path.pop_back();
        on_path[root] = 0;
    }

    void extend() {
        int u = path.back();
        for (int v : d.out_neighbors(u)) {
            if (v < root) continue;
            int arc = sign_value(d.arc(u, v));
            if (v == root) {
                int len = static_cast<int>(path.size());
                int prod = product * arc;
                out.push_back({path, prod, cycle_sign_of(len, prod)});
                continue;
            }
            if (on_path[v] || static_cast<int>(path.size()) >= max_len) continue;
            on_path[v] = 1;
            path.push_back(v);
            product *= arc;
            extend();
            product *= arc;  // arc signs are +-1
            path.pop_back();
            on_path[v] = 0;
        }
    }
};

}  // namespace

std::vector<SimpleCycle> simple_cycles(const SignedDigraph& d, int max_len) {
    std::vector<SimpleCycle> out;
    for (int root = 0; root < d.size(); ++root) {
        CycleSearch search(d, root, std::min(max_len, d.size()), out);
        search.run();
    }
    std::sort(out.begin(), out.end(), [](const SimpleCycle& a, const SimpleCycle& b) {
        return a.vertices < b.vertices;
    });
    return out;
}

namespace {

struct CompositeSearch {
    const std::vector<SimpleCycle>& cycles;
    std::vector<std::uint64_t> masks;
    int n;
    std::optional<int> exact_len;
    const std::function<bool(const CompositeCycle&)>& visit;
    CompositeCycle current;
    std::uint64_t used = 0;
    int used_count = 0;
    bool stopped = false;

    CompositeSearch(const std::vector<SimpleCycle>& cs, int nverts, std::optional<int> len,
                    const std::function<bool(const CompositeCycle&)>& v)
        : cycles(cs), n(nverts), exact_len(len), visit(v) {
        masks.reserve(cs.size());
        for (const auto& c : cs) {
            std::uint64_t m = 0;
            for (int x : c.vertices) m |= std::uint64_t{1} << x;
            masks.push_back(m);
        }
    }

    void run(std::size_t from) {
        if (stopped) return;
        if (!current.parts.empty() && (!exact_len || current.length() == *exact_len)) {
            if (!visit(current)) {
                stopped = true;
                return;
            }
        }
        for (std::size_t i = from; i < cycles.size() && !stopped; ++i) {
            if (masks[i] & used) continue;
            int len = cycles[i].length();
            if (exact_len && current.length() + len > *exact_len) continue;
            used |= masks[i];
            used_count += len;
            current.parts.push_back(cycles[i]);
            run(i + 1);
            current.parts.pop_back();
            used_count -= len;
            used &= ~masks[i];
        }
    }
};

void require_within_cap(const SignedDigraph& d, int cap) {
    if (d.size() > cap) {
        std::ostringstream msg;
        msg << "cycle enumeration not computed: n=" << d.size() << " exceeds cap " << cap;
        throw CapExceeded(msg.str());
    }
}

}  // namespace

void enumerate_composite_cycles(const SignedDigraph& d, std::optional<int> exact_len, int cap,
                                const std::function<bool(const CompositeCycle&)>& visit) {
    require_within_cap(d, cap);
    std::vector<SimpleCycle> cycles = simple_cycles(d, d.size());
    CompositeSearch search(cycles, d.size(), exact_len, visit);
    search.run(0);
}

std::vector<CompositeCycle> composite_cycles(const SignedDigraph& d, std::optional<int> exact_len,
                                             int cap) {
    std::vector<CompositeCycle> out;
    enumerate_composite_cycles(d, exact_len, cap, [&](const CompositeCycle& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

int max_composite_cycle_length(const SignedDigraph& d, int cap) {
    require_within_cap(d, cap);
    std::vector<SimpleCycle> cycles = simple_cycles(d, d.size());
    int best = 0;
    // Backtracking with an available-vertex bound; disjoint cycle packing is
    // small at the n <= cap scale this library targets.
    std::vector<std::uint64_t> masks;
    for (const auto& c : cycles) {
        std::uint64_t m = 0;
        for (int x : c.vertices) m |= std::uint64_t{1} << x;
        masks.push_back(m);
    }
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t from,
                                                                   std::uint64_t used, int len) {
        best = std::max(best, len);
        int free_vertices = d.size() - __builtin_popcountll(used);
        if (len + free_vertices <= best) return;
        for (std::size_t i = from; i < cycles.size(); ++i) {
            if (masks[i] & used) continue;
            rec(i + 1, used | masks[i], len + cycles[i].length());
        }
    };
    rec(0, 0, 0);
    return best;
}

std::vector<int> cyclic_run_lengths(const std::vector<Sign>& word, std::vector<Sign>* run_signs) {
    std::vector<int> lengths;
    if (run_signs) run_signs->clear();
    const int k = static_cast<int>(word.size());
    if (k == 0) return lengths;
    int start = 0;
    bool uniform = true;
    for (int i = 0; i < k; ++i)
        if (word[i] != word[(i + k - 1) % k]) {
            start = i;
            uniform = false;
            break;
        }
    if (uniform) {
        lengths.push_back(k);
        if (run_signs) run_signs->push_back(word[0]);
        return lengths;
    }
    int i = start;
    do {
        Sign s = word[i];
        int len = 0;
        while (len < k && word[(i + len) % k] == s) ++len;
        lengths.push_back(len);
        if (run_signs) run_signs->push_back(s);
        i = (i + len) % k;
    } while (i != start);
    return lengths;
}

namespace {

// Walks a path graph from its smaller endpoint; returns the vertex order.
std::vector<int> path_order(const SignedUGraph& g) {
    const int n = g.size();
    std::vector<int> ends;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 1) ends.push_back(v);
    int start = n == 1 ? 0 : *std::min_element(ends.begin(), ends.end());
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (static_cast<int>(order.size()) < n) {
        int next = -1;
        for (int w : g.neighbors(cur))
            if (w != prev) next = next < 0 ? w : std::min(next, w);
        if (next < 0) break;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

std::vector<int> cycle_order(const SignedUGraph& g) {
    int start = 0;
    int next = *std::min_element(g.neighbors(start).begin(), g.neighbors(start).end());
    std::vector<int> order{start, next};
    int prev = start, cur = next;
    while (true) {
        int nxt = -1;
        for (int w : g.neighbors(cur))
            if (w != prev) nxt = w;
        if (nxt == start) break;
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    return order;
}

bool graph_connected(const SignedUGraph& g) {
    const int n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

}  // namespace

std::vector<MaximalSignedPath> maximal_signed_paths(const SignedUGraph& g) {
    const int n = g.size();
    bool is_path = true, is_cycle = n >= 3;
    int deg1 = 0;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d > 2) is_path = is_cycle = false;
        if (d != 2) is_cycle = false;
        if (d == 1) ++deg1;
    }
    if (n > 1 && deg1 != 2) is_path = false;
    if (!graph_connected(g)) is_path = is_cycle = false;

    std::vector<MaximalSignedPath> runs;
    if (is_path && !is_cycle) {
        std::vector<int> order = path_order(g);
        MaximalSignedPath cur;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            int u = order[i], v = order[i + 1];
            Sign s = g.edge_sign(u, v);
            if (cur.edges.empty() || s == cur.sign) {
                cur.sign = s;
                cur.edges.push_back({u, v});
            } else {
                runs.push_back(cur);
                cur = MaximalSignedPath{{{u, v}}, s};
            }
        }
        if (!cur.edges.empty()) runs.push_back(cur);
        return runs;
    }
    if (is_cycle) {
        std::vector<int> order = cycle_order(g);
        const int k = n;
        std::vector<Sign> word(k);
        for (int i = 0; i < k; ++i) word[i] = g.edge_sign(order[i], order[(i + 1) % k]);
        std::vector<Sign> signs;
        std::vector<int> lengths = cyclic_run_lengths(word, &signs);
        // Recover the starting edge index of the first run (as chosen by
        // cyclic_run_lengths: index 0 for a uniform word, else the first
        // sign-change boundary).
        int start = 0;
        for (int i = 0; i < k; ++i)
            if (word[i] != word[(i + k - 1) % k]) {
                start = i;
                break;
            }
        int pos = start;
        for (std::size_t r = 0; r < lengths.size(); ++r) {
            MaximalSignedPath run;
            run.sign = signs[r];
            for (int t = 0; t < lengths[r]; ++t) {
                int e = (pos + t) % k;
                run.edges.push_back({order[e], order[(e + 1) % k]});
            }
            pos = (pos + lengths[r]) % k;
            runs.push_back(run);
        }
        return runs;
    }
    throw std::invalid_argument("maximal signed paths are defined for path or cycle graphs only");
}

namespace {

struct MatchingSearch {
    const std::vector<UEdge>& edges;
    const std::function<bool(const Matching&)>& visit;
    std::vector<char> vertex_used;
    Matching current;
    bool stopped = false;

    MatchingSearch(int n, const std::vector<UEdge>& es,
                   const std::function<bool(const Matching&)>& v)
        : edges(es), visit(v), vertex_used(n, 0) {}

    void run(std::size_t from) {
        if (stopped) return;
        if (!visit(current)) {
            stopped = true;
            return;
        }
        for (std::size_t i = from; i < edges.size() && !stopped; ++i) {
            const UEdge& e = edges[i];
            if (vertex_used[e.u] || vertex_used[e.v]) continue;
            vertex_used[e.u] = vertex_used[e.v] = 1;
            current.edges.push_back(e);
            run(i + 1);
            current.edges.pop_back();
            vertex_used[e.u] = vertex_used[e.v] = 0;
        }
    }
};

}  // namespace

void enumerate_matchings(const SignedUGraph& g, std::optional<Sign> sign_filter,
                         const std::optional<std::vector<UEdge>>& within,
                         const std::function<bool(const Matching&)>& visit) {
    std::vector<UEdge> pool = within ? *within : g.edges();
    if (sign_filter) {
        std::erase_if(pool, [&](const UEdge& e) { return e.sign != *sign_filter; });
    }
    MatchingSearch search(g.size(), pool, visit);
    search.run(0);
}

std::vector<Matching> matchings(const SignedUGraph& g, std::optional<Sign> sign_filter,
                                const std::optional<std::vector<UEdge>>& within) {
    std::vector<Matching> out;
    enumerate_matchings(g, sign_filter, within, [&](const Matching& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

Matching max_matching(const SignedUGraph& g, std::optional<Sign> sign_filter) {
    Matching best;
    enumerate_matchings(g, sign_filter, {}, [&](const Matching& m) {
        if (m.length() > best.length()) best = m;
        return true;
    });
    return best;
}

std::vector<Sign> cycle_edge_signs(const SignedUGraph& g, const UCycle& c) {
    std::vector<Sign> out;
    const int k = c.length();
    for (int i = 0; i < k; ++i) out.push_back(g.edge_sign(c.vertices[i], c.vertices[(i + 1) % k]));
    return out;
}

namespace {

// Enumerates undirected simple cycles of length >= 3: DFS from each root
// (the cycle's minimum vertex) over larger vertices; the direction is fixed
// by requiring the second vertex to be smaller than the last.
void undirected_cycles(const SignedUGraph& g, std::vector<UCycle>& out) {
    const int n = g.size();
    std::vector<int> path;
    std::vector<char> on_path(n, 0);
    std::function<void(int, int)> dfs = [&](int root, int u) {
        for (int v : g.neighbors(u)) {
            if (v == root && path.size() >= 3) {
                if (path[1] < path.back()) out.push_back({path});
                continue;
            }
            if (v <= root || on_path[v]) continue;
            on_path[v] = 1;
            path.push_back(v);
            dfs(root, v);
            path.pop_back();
            on_path[v] = 0;
        }
    };
    for (int root = 0; root < n; ++root) {
        path.assign(1, root);
        on_path.assign(n, 0);
        on_path[root] = 1;
        dfs(root, root);
    }
    std::sort(out.begin(), out.end(),
              [](const UCycle& a, const UCycle& b) { return a.vertices < b.vertices; });
}

}  // namespace

GraphMetrics graph_metrics(const SignedUGraph& g, int cap) {
    if (!graph_connected(g)) throw std::invalid_argument("graph metrics require a connected graph");
    if (g.size() > cap) {
        std::ostringstream msg;
        msg << "graph metrics not computed: n=" << g.size() << " exceeds cap " << cap;
        throw CapExceeded(msg.str());
    }
    const int n = g.size();
    GraphMetrics m;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 1) m.leaves.push_back(v);
    m.dist.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        q.push(s);
        m.dist[s][s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u))
                if (m.dist[s][v] < 0) {
                    m.dist[s][v] = m.dist[s][u] + 1;
                    q.push(v);
                }
        }
    }
    undirected_cycles(g, m.cycles);

    std::vector<char> on_cycle(n, 0);
    for (const auto& c : m.cycles)
        for (int v : c.vertices) on_cycle[v] = 1;

    // Path adjacency: BFS from one cycle's vertex set through vertices that
    // lie on no cycle, terminating on the other cycle's vertices.
    const int kc = static_cast<int>(m.cycles.size());
    for (int a = 0; a < kc; ++a)
        for (int b = a + 1; b < kc; ++b) {
            CyclePairRelation rel;
            rel.c1 = a;
            rel.c2 = b;
            std::vector<char> in_b(n, 0);
            for (int v : m.cycles[b].vertices) in_b[v] = 1;
            bool share = false;
            for (int v : m.cycles[a].vertices)
                if (in_b[v]) share = true;
            if (share) {
                rel.path_adjacent = true;
                rel.distance = 0;
            } else {
                std::vector<int> dist(n, -1);
                std::queue<int> q;
                for (int v : m.cycles[a].vertices) {
                    dist[v] = 0;
                    q.push(v);
                }
                int found = -1;
                while (!q.empty() && found < 0) {
                    int u = q.front();
                    q.pop();
                    for (int v : g.neighbors(u)) {
                        if (dist[v] >= 0) continue;
                        if (in_b[v]) {
                            found = dist[u] + 1;
                            break;
                        }
                        if (!on_cycle[v]) {
                            dist[v] = dist[u] + 1;
                            q.push(v);
                        }
                    }
                }
                rel.path_adjacent = found >= 0;
                rel.distance = found;
            }
            m.cycle_pairs.push_back(rel);
        }

    m.leaf_cycle_dist.assign(m.leaves.size(), std::vector<int>(kc, -1));
    for (std::size_t li = 0; li < m.leaves.size(); ++li)
        for (int ci = 0; ci < kc; ++ci) m.leaf_cycle_dist[li][ci] =
            dist_to_cycle(m, m.leaves[li], m.cycles[ci]);
    return m;
}

int dist_to_cycle(const GraphMetrics& m, int vertex, const UCycle& c) {
    int best = -1;
    for (int v : c.vertices) {
        int d = m.dist[vertex][v];
        if (d >= 0 && (best < 0 || d < best)) best = d;
    }
    return best;
}

}  // namespace spm
