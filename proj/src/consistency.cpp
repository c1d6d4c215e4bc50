#include "spm/consistency.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "spm/errors.hpp"

namespace spm {

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Satisfied: return "satisfied";
        case CheckStatus::Violated: return "violated";
        case CheckStatus::NotApplicable: return "not-applicable";
        case CheckStatus::NotComputed: return "not-computed";
    }
    return "";
}

std::string verdict_kind_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::ConsistentProven: return "consistent-proven";
        case Verdict::Kind::InconsistentProven: return "inconsistent-proven";
        case Verdict::Kind::Undetermined: return "undetermined";
    }
    return "";
}

namespace {

SimpleCycle two_cycle(int u, int v, int product) {
    if (u > v) std::swap(u, v);
    return SimpleCycle{{u, v}, product, -product};
}

// Undirected edges whose both arcs are present; works for patterns that are
// not combinatorially symmetric (only mutual pairs count as 2-cycles).
std::vector<UEdge> mutual_edges(const SignPattern& p) {
    std::vector<UEdge> out;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j)
            if (p.at(i, j) != Sign::Zero && p.at(j, i) != Sign::Zero)
                out.push_back({i, j, multiply(p.at(i, j), p.at(j, i))});
    return out;
}

CompositeCycle matching_to_composite(const std::vector<UEdge>& edges) {
    CompositeCycle c;
    for (const auto& e : edges) c.parts.push_back(two_cycle(e.u, e.v, sign_value(e.sign)));
    return c;
}

// Directed cycle following an undirected vertex order (both arcs exist for
// combinatorially symmetric patterns).
SimpleCycle directed_cycle(const SignPattern& p, const std::vector<int>& order) {
    const int k = static_cast<int>(order.size());
    int product = 1;
    for (int i = 0; i < k; ++i) product *= sign_value(p.at(order[i], order[(i + 1) % k]));
    int min_pos = static_cast<int>(std::min_element(order.begin(), order.end()) - order.begin());
    std::vector<int> rotated;
    for (int i = 0; i < k; ++i) rotated.push_back(order[(min_pos + i) % k]);
    return SimpleCycle{rotated, product, k % 2 == 0 ? -product : product};
}

CompositeCycle join(const CompositeCycle& a, const CompositeCycle& b) {
    CompositeCycle c = a;
    c.parts.insert(c.parts.end(), b.parts.begin(), b.parts.end());
    std::sort(c.parts.begin(), c.parts.end(),
              [](const SimpleCycle& x, const SimpleCycle& y) { return x.vertices < y.vertices; });
    return c;
}

bool plan_valid(const WitnessPlan& plan, int n) {
    return plan.real_bound.min_real + plan.complex_bound.min_complex >= n + 1;
}

// The generic witness pair behind the mixed-cover condition: the largest
// matching of positive mutual edges (these 2-cycles have real base
// eigenvalues) against the largest matching of negative mutual edges
// (nonreal base eigenvalues).
std::optional<WitnessPlan> mixed_cover_plan(const SignPattern& p, int cap, std::string origin) {
    SignedDigraph d(p);
    int m = max_composite_cycle_length(d, cap);
    std::vector<UEdge> pool = mutual_edges(p);
    SignedUGraph pair_graph(p.size(), pool);
    Matching pos = max_matching(pair_graph, Sign::Plus);
    Matching neg = max_matching(pair_graph, Sign::Minus);
    if (pos.length() == 0 || neg.length() == 0) return std::nullopt;
    if (2 * pos.length() + 2 * neg.length() < m + 2) return std::nullopt;
    WitnessPlan plan;
    plan.origin = std::move(origin);
    plan.real_side = matching_to_composite(pos.edges);
    plan.real_bound = bound_from_parts(plan.real_side, p.size() - m);
    plan.complex_side = matching_to_composite(neg.edges);
    plan.complex_bound = bound_from_parts(plan.complex_side, 0);
    plan.complex_bound.min_real = 0;
    if (!plan_valid(plan, p.size())) return std::nullopt;
    return plan;
}

int odd_run_count(const std::vector<MaximalSignedPath>& runs) {
    int odd = 0;
    for (const auto& r : runs)
        if (r.length() % 2 == 1) ++odd;
    return odd;
}

std::string runs_description(const std::vector<MaximalSignedPath>& runs) {
    std::ostringstream s;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (i) s << " ";
        s << sign_char(runs[i].sign) << "x" << runs[i].length();
    }
    return s.str();
}

CheckResult odd_paths_impl(const SignPattern& p, int cap, std::string id, std::string condition) {
    CheckResult r{std::move(id), std::move(condition), CheckStatus::NotApplicable, "", {}};
    if (structural_class(p) != StructuralClass::Tridiagonal0Diag) return r;
    SignedUGraph g(p);
    auto runs = maximal_signed_paths(g);
    int odd = odd_run_count(runs);
    std::ostringstream ev;
    ev << odd << " odd-length maximal signed paths (runs: " << runs_description(runs) << ")";
    r.evidence = ev.str();
    if (odd >= 2) {
        r.status = CheckStatus::Violated;
        try {
            if (auto plan = mixed_cover_plan(p, cap, r.check_id)) r.plans.push_back(*plan);
        } catch (const CapExceeded&) {
        }
    } else {
        r.status = CheckStatus::Satisfied;
    }
    return r;
}

}  // namespace

CheckResult check_odd_maximal_paths(const SignPattern& p, int cap) {
    return odd_paths_impl(p, cap, "odd_maximal_paths",
                          "consistent tridiagonal patterns have at most one odd-length maximal "
                          "signed path");
}

CheckResult check_unique_inertia_odd_paths(const SignPattern& p, int cap) {
    return odd_paths_impl(p, cap, "odd_maximal_paths_inertia",
                          "tridiagonal patterns requiring a unique inertia have at most one "
                          "odd-length maximal signed path");
}

CheckResult check_two_cycle_covers(const SignPattern& p, int cap) {
    CheckResult r{"two_cycle_covers",
                  "no two maximum-length all-2-cycle covers may differ in their negative-2-cycle "
                  "count",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    try {
        SignedDigraph d(p);
        int m = max_composite_cycle_length(d, cap);
        if (m == 0 || m % 2 != 0) return r;
        std::optional<CompositeCycle> low, high;
        int low_count = 0, high_count = 0;
        enumerate_composite_cycles(d, m, cap, [&](const CompositeCycle& c) {
            for (const auto& part : c.parts)
                if (part.length() != 2) return true;
            int neg = 0;
            for (const auto& part : c.parts)
                if (part.cycle_sign < 0) ++neg;
            if (!low || neg < low_count) {
                low = c;
                low_count = neg;
            }
            if (!high || neg >= high_count) {
                high = c;
                high_count = neg;
            }
            return true;
        });
        if (!low) return r;  // no all-2-cycle cover of length m
        if (low_count == high_count) {
            r.status = CheckStatus::Satisfied;
            std::ostringstream ev;
            ev << "all length-" << m << " 2-cycle covers carry " << low_count
               << " negative 2-cycles";
            r.evidence = ev.str();
            return r;
        }
        r.status = CheckStatus::Violated;
        std::ostringstream ev;
        ev << high->to_string() << " has " << high_count << " negative 2-cycles, "
           << low->to_string() << " has " << low_count;
        r.evidence = ev.str();
        WitnessPlan plan;
        plan.origin = r.check_id;
        plan.real_side = *high;
        plan.real_bound = bound_from_parts(*high, p.size() - m);
        plan.complex_side = *low;
        plan.complex_bound = bound_from_parts(*low, 0);
        plan.complex_bound.min_real = 0;
        if (plan_valid(plan, p.size())) r.plans.push_back(plan);
    } catch (const CapExceeded& e) {
        r.status = CheckStatus::NotComputed;
        r.evidence = e.what();
    }
    return r;
}

CheckResult check_forbidden_submatrices(const SignPattern& p, int cap) {
    CheckResult r{"forbidden_submatrices",
                  "the edge word of a consistent tridiagonal pattern contains no (+-+), (-+-), "
                  "(+---+) or (-+++-) subword",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) != StructuralClass::Tridiagonal0Diag) return r;
    EdgeWord w = tridiagonal_edge_word(p);
    auto matches = [&](std::size_t pos, const char* pat) {
        for (std::size_t i = 0; pat[i]; ++i) {
            if (pos + i >= w.size()) return false;
            if (sign_char(w[pos + i]) != pat[i]) return false;
        }
        return true;
    };
    const char* subwords[] = {"+-+", "-+-", "+---+", "-+++-"};
    std::ostringstream ev;
    bool violated = false;
    for (const char* sub : subwords)
        for (std::size_t pos = 0; pos < w.size(); ++pos)
            if (matches(pos, sub)) {
                if (violated) ev << "; ";
                ev << "subword " << sub << " at edge " << pos + 1;
                violated = true;
                break;  // one position per subword is enough evidence
            }
    if (violated) {
        r.status = CheckStatus::Violated;
        r.evidence = ev.str();
        try {
            if (auto plan = mixed_cover_plan(p, cap, r.check_id)) r.plans.push_back(*plan);
        } catch (const CapExceeded&) {
        }
    } else {
        r.status = CheckStatus::Satisfied;
        r.evidence = "word " + word_string(w);
    }
    return r;
}

namespace {

// The leaf-swap construction: a maximum composite cycle must cover the common
// neighbour w; swapping the 2-cycle at w onto the positively signed leaf edge
// forces two extra real eigenvalues, onto the negative one two extra nonreal.
std::vector<WitnessPlan> adjacent_leaf_plans(const SignPattern& p, int u_plus, int v_minus, int w,
                                             int cap, const std::string& origin) {
    std::vector<WitnessPlan> out;
    SignedDigraph d(p);
    int m = max_composite_cycle_length(d, cap);
    std::optional<CompositeCycle> gamma;
    enumerate_composite_cycles(d, m, cap, [&](const CompositeCycle& c) {
        gamma = c;
        return false;  // any maximum composite works
    });
    if (!gamma) return out;
    // Locate the part covering w.
    int part_idx = -1;
    for (std::size_t i = 0; i < gamma->parts.size(); ++i)
        for (int v : gamma->parts[i].vertices)
            if (v == w) part_idx = static_cast<int>(i);
    if (part_idx < 0) return out;
    CompositeCycle rest;
    for (std::size_t i = 0; i < gamma->parts.size(); ++i)
        if (static_cast<int>(i) != part_idx) rest.parts.push_back(gamma->parts[i]);
    const SimpleCycle& at_w = gamma->parts[part_idx];

    CompositeCycle shared = rest;
    if (at_w.length() > 2) {
        // Rotate the cycle through w so that w sits first, then match the
        // remaining even stretch by consecutive 2-cycles.
        std::vector<int> rot = at_w.vertices;
        while (rot.front() != w) std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        int k = at_w.length() - 1;  // vertices besides w
        if (k % 2 == 0) return out;  // cannot happen for a maximum composite
        for (int i = 1; i + 1 < at_w.length(); i += 2) {
            int a = rot[i], b = rot[i + 1];
            shared.parts.push_back(
                two_cycle(a, b, sign_value(multiply(p.at(a, b), p.at(b, a)))));
        }
    }
    auto leaf_cycle = [&](int leaf) {
        return two_cycle(leaf, w, sign_value(multiply(p.at(leaf, w), p.at(w, leaf))));
    };
    WitnessPlan plan;
    plan.origin = origin;
    plan.real_side = join(shared, CompositeCycle{{leaf_cycle(u_plus)}});
    plan.real_bound = bound_from_parts(plan.real_side, p.size() - m);
    plan.complex_side = join(shared, CompositeCycle{{leaf_cycle(v_minus)}});
    plan.complex_bound = bound_from_parts(plan.complex_side, 0);
    plan.complex_bound.min_real = 0;
    if (plan_valid(plan, p.size())) out.push_back(plan);
    return out;
}

}  // namespace

CheckResult check_adjacent_leaves(const SignPattern& p, int cap) {
    CheckResult r{"adjacent_leaves",
                  "two leaves with a common neighbour must join it by equally signed edges",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (!is_combinatorially_symmetric(p) || !has_zero_diagonal(p) || !is_irreducible(p) ||
        p.size() < 3)
        return r;
    SignedUGraph g(p);
    r.status = CheckStatus::Satisfied;
    for (int w = 0; w < p.size(); ++w) {
        std::vector<int> leaf_neighbors;
        for (int u : g.neighbors(w))
            if (g.degree(u) == 1) leaf_neighbors.push_back(u);
        for (std::size_t a = 0; a < leaf_neighbors.size(); ++a)
            for (std::size_t b = a + 1; b < leaf_neighbors.size(); ++b) {
                int u = leaf_neighbors[a], v = leaf_neighbors[b];
                Sign su = g.edge_sign(u, w), sv = g.edge_sign(v, w);
                if (su == sv) continue;
                r.status = CheckStatus::Violated;
                int u_plus = su == Sign::Plus ? u : v;
                int v_minus = su == Sign::Plus ? v : u;
                std::ostringstream ev;
                ev << "leaves " << u + 1 << " and " << v + 1 << " join " << w + 1
                   << " by oppositely signed edges";
                r.evidence = ev.str();
                try {
                    for (auto& plan : adjacent_leaf_plans(p, u_plus, v_minus, w, cap, r.check_id))
                        r.plans.push_back(plan);
                } catch (const CapExceeded&) {
                }
                return r;
            }
    }
    return r;
}

CheckResult check_mixed_covers(const SignPattern& p, int cap) {
    CheckResult r{"mixed_covers",
                  "an all-negative-2-cycle composite and an all-positive-2-cycle composite may "
                  "not reach total length m+2",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    try {
        SignedDigraph d(p);
        int m = max_composite_cycle_length(d, cap);
        if (m < 2) {
            r.status = CheckStatus::Satisfied;
            r.evidence = "no composite cycles of length >= 2";
            return r;
        }
        std::vector<UEdge> pool = mutual_edges(p);
        SignedUGraph pair_graph(p.size(), pool);
        Matching pos = max_matching(pair_graph, Sign::Plus);
        Matching neg = max_matching(pair_graph, Sign::Minus);
        std::ostringstream ev;
        ev << "max negative-2-cycle composite length " << 2 * pos.length()
           << ", max positive-2-cycle composite length " << 2 * neg.length() << ", m = " << m;
        r.evidence = ev.str();
        if (pos.length() >= 1 && neg.length() >= 1 &&
            2 * pos.length() + 2 * neg.length() >= m + 2) {
            r.status = CheckStatus::Violated;
            if (auto plan = mixed_cover_plan(p, cap, r.check_id)) r.plans.push_back(*plan);
        } else {
            r.status = CheckStatus::Satisfied;
        }
    } catch (const CapExceeded& e) {
        r.status = CheckStatus::NotComputed;
        r.evidence = e.what();
    }
    return r;
}

namespace {

struct CycleConditionHits {
    bool two_nonadjacent_positive = false;
    std::pair<UEdge, UEdge> positive_pair{};
    bool multiple_odd_runs = false;
    bool odd_with_positive = false;
    UEdge positive_edge{};
    std::string describe() const {
        std::string s;
        if (two_nonadjacent_positive) s += "(i) two nonadjacent positive edges";
        if (multiple_odd_runs) s += std::string(s.empty() ? "" : "; ") + "(ii) more than one odd maximal signed path";
        if (odd_with_positive) s += std::string(s.empty() ? "" : "; ") + "(iii) odd cycle with a positive edge";
        return s;
    }
    bool any() const { return two_nonadjacent_positive || multiple_odd_runs || odd_with_positive; }
};

CycleConditionHits cycle_conditions(const SignedUGraph& g, const std::vector<int>& order) {
    CycleConditionHits hits;
    const int k = static_cast<int>(order.size());
    std::vector<UEdge> edges;
    std::vector<Sign> word;
    for (int i = 0; i < k; ++i) {
        int u = order[i], v = order[(i + 1) % k];
        Sign s = g.edge_sign(u, v);
        edges.push_back({std::min(u, v), std::max(u, v), s});
        word.push_back(s);
    }
    for (int i = 0; i < k && !hits.two_nonadjacent_positive; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (word[i] != Sign::Plus || word[j] != Sign::Plus) continue;
            const UEdge &a = edges[i], &b = edges[j];
            bool adjacent = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
            if (!adjacent) {
                hits.two_nonadjacent_positive = true;
                hits.positive_pair = {a, b};
                break;
            }
        }
    std::vector<int> lengths = cyclic_run_lengths(word, nullptr);
    int odd = 0;
    for (int len : lengths)
        if (len % 2) ++odd;
    hits.multiple_odd_runs = odd > 1;
    if (k % 2 == 1)
        for (int i = 0; i < k; ++i)
            if (word[i] == Sign::Plus) {
                hits.odd_with_positive = true;
                hits.positive_edge = edges[i];
                break;
            }
    return hits;
}

// Plans for the cycle-versus-2-cycles constructions: the directed cycle
// itself on the complex side, leaf 2-cycles on the positive edges on the real
// side, both joined with the same composite `rest` living off the cycle.
void push_cycle_plans(const SignPattern& p, const CycleConditionHits& hits,
                      const std::vector<int>& order, const CompositeCycle& rest,
                      int structural_zeros, int cap, const std::string& origin,
                      std::vector<WitnessPlan>& out) {
    SimpleCycle full = directed_cycle(p, order);
    const int n = p.size();
    auto edge_cycle = [&](const UEdge& e) {
        return two_cycle(e.u, e.v, sign_value(multiply(p.at(e.u, e.v), p.at(e.v, e.u))));
    };
    if (hits.two_nonadjacent_positive) {
        WitnessPlan plan;
        plan.origin = origin + "(i)";
        plan.real_side = join(
            rest, CompositeCycle{{edge_cycle(hits.positive_pair.first),
                                  edge_cycle(hits.positive_pair.second)}});
        plan.real_bound = bound_from_parts(plan.real_side, structural_zeros);
        plan.complex_side = join(rest, CompositeCycle{{full}});
        plan.complex_bound = bound_from_parts(plan.complex_side, 0);
        plan.complex_bound.min_real = 0;
        if (plan_valid(plan, n)) out.push_back(plan);
    }
    if (hits.multiple_odd_runs) {
        try {
            if (auto plan = mixed_cover_plan(p, cap, origin + "(ii)")) out.push_back(*plan);
        } catch (const CapExceeded&) {
        }
    }
    if (hits.odd_with_positive) {
        WitnessPlan plan;
        plan.origin = origin + "(iii)";
        plan.real_side = join(rest, CompositeCycle{{edge_cycle(hits.positive_edge)}});
        plan.real_bound = bound_from_parts(plan.real_side, structural_zeros);
        plan.complex_side = join(rest, CompositeCycle{{full}});
        plan.complex_bound = bound_from_parts(plan.complex_side, 0);
        plan.complex_bound.min_real = 0;
        if (plan_valid(plan, n)) out.push_back(plan);
    }
}

std::vector<int> cycle_order_of(const UCycle& c) { return c.vertices; }

// Maximum composite cycle of the sub-digraph induced on `keep`, mapped back
// to original vertex labels.
CompositeCycle max_composite_outside(const SignPattern& p, const std::vector<int>& keep, int cap) {
    CompositeCycle best;
    if (keep.empty()) return best;
    SignPattern sub = submatrix(p, keep, keep);
    SignedDigraph d(sub);
    int m = max_composite_cycle_length(d, cap);
    if (m == 0) return best;
    enumerate_composite_cycles(d, m, cap, [&](const CompositeCycle& c) {
        best = c;
        return false;
    });
    for (auto& part : best.parts)
        for (auto& v : part.vertices) v = keep[v];
    return best;
}

// First composite of exactly `len` in the sub-digraph induced on `keep`.
std::optional<CompositeCycle> composite_outside_exact(const SignPattern& p,
                                                      const std::vector<int>& keep, int len,
                                                      int cap) {
    if (len == 0) return CompositeCycle{};
    if (keep.empty()) return std::nullopt;
    SignPattern sub = submatrix(p, keep, keep);
    SignedDigraph d(sub);
    std::optional<CompositeCycle> found;
    enumerate_composite_cycles(d, len, cap, [&](const CompositeCycle& c) {
        found = c;
        return false;
    });
    if (found)
        for (auto& part : found->parts)
            for (auto& v : part.vertices) v = keep[v];
    return found;
}

}  // namespace

CheckResult check_cycle_graph(const SignPattern& p, int cap) {
    CheckResult r{"cycle_graph",
                  "a cycle graph admits no two nonadjacent positive edges, at most one odd "
                  "maximal signed path, and no positive edge when the order is odd",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) != StructuralClass::Cycle0Diag) return r;
    SignedUGraph g(p);
    GraphMetrics metrics = graph_metrics(g, std::max(cap, p.size()));
    const UCycle& c = metrics.cycles.at(0);
    CycleConditionHits hits = cycle_conditions(g, cycle_order_of(c));
    if (!hits.any()) {
        r.status = CheckStatus::Satisfied;
        r.evidence = "none of (i)/(ii)/(iii) hold";
        return r;
    }
    r.status = CheckStatus::Violated;
    r.evidence = hits.describe();
    push_cycle_plans(p, hits, cycle_order_of(c), CompositeCycle{}, 0, cap, r.check_id, r.plans);
    return r;
}

CheckResult check_all_negative_odd_cycle(const SignPattern& p) {
    CheckResult r{"all_negative_odd_cycle",
                  "an odd cycle graph with every edge negative is consistent with exactly one "
                  "real eigenvalue",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) != StructuralClass::Cycle0Diag || p.size() % 2 == 0) return r;
    SignedUGraph g(p);
    for (const auto& e : g.edges())
        if (e.sign != Sign::Minus) return r;
    r.status = CheckStatus::Satisfied;
    r.evidence = "all edges negative on an odd cycle";
    return r;
}

CheckResult check_unicyclic(const SignPattern& p, int cap) {
    CheckResult r{"unicyclic",
                  "with every leaf at even distance from the unique cycle, the cycle obeys the "
                  "cycle-graph conditions",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) != StructuralClass::Unicyclic0Diag) return r;
    try {
        SignedUGraph g(p);
        GraphMetrics metrics = graph_metrics(g, cap);
        if (metrics.cycles.size() != 1) return r;
        const UCycle& c = metrics.cycles[0];
        for (std::size_t li = 0; li < metrics.leaves.size(); ++li)
            if (metrics.leaf_cycle_dist[li][0] % 2 != 0) {
                r.evidence = "a leaf lies at odd distance from the cycle";
                return r;
            }
        CycleConditionHits hits = cycle_conditions(g, c.vertices);
        if (!hits.any()) {
            r.status = CheckStatus::Satisfied;
            r.evidence = "none of (i)/(ii)/(iii) hold on the cycle";
            return r;
        }
        r.status = CheckStatus::Violated;
        r.evidence = hits.describe();
        SignedDigraph d(p);
        int m = max_composite_cycle_length(d, cap);
        CompositeCycle off = max_composite_outside(p, complement_indices(p.size(), c.vertices), cap);
        push_cycle_plans(p, hits, c.vertices, off, p.size() - m, cap, r.check_id, r.plans);
    } catch (const CapExceeded& e) {
        r.status = CheckStatus::NotComputed;
        r.evidence = e.what();
    }
    return r;
}

CheckResult check_multicycle(const SignPattern& p, int cap) {
    CheckResult r{"multicycle",
                  "in a leafless graph whose path-adjacent cycles sit at odd distances, every "
                  "cycle obeys the cycle-graph conditions",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) == StructuralClass::Cycle0Diag) return r;
    if (!is_combinatorially_symmetric(p) || !has_zero_diagonal(p) || !is_irreducible(p)) return r;
    try {
        SignedUGraph g(p);
        for (int v = 0; v < p.size(); ++v)
            if (g.degree(v) <= 1) return r;
        GraphMetrics metrics = graph_metrics(g, cap);
        if (metrics.cycles.empty()) return r;
        for (const auto& rel : metrics.cycle_pairs)
            if (rel.path_adjacent && rel.distance % 2 == 0) {
                r.evidence = "a path-adjacent cycle pair sits at even distance";
                return r;
            }
        SignedDigraph d(p);
        int m = max_composite_cycle_length(d, cap);
        bool violated = false;
        std::ostringstream ev;
        for (const auto& c : metrics.cycles) {
            CycleConditionHits hits = cycle_conditions(g, c.vertices);
            if (!hits.any()) continue;
            if (violated) ev << "; ";
            ev << "cycle "
               << cycle_to_string(SimpleCycle{c.vertices, 1, 1}) << ": " << hits.describe();
            violated = true;
            auto rest = composite_outside_exact(p, complement_indices(p.size(), c.vertices),
                                                p.size() - c.length(), cap);
            if (rest)
                push_cycle_plans(p, hits, c.vertices, *rest, p.size() - m, cap, r.check_id,
                                 r.plans);
            else if (hits.multiple_odd_runs) {
                try {
                    if (auto plan = mixed_cover_plan(p, cap, r.check_id + "(ii)"))
                        r.plans.push_back(*plan);
                } catch (const CapExceeded&) {
                }
            }
        }
        r.status = violated ? CheckStatus::Violated : CheckStatus::Satisfied;
        if (!violated) ev << "none of (i)/(ii)/(iii) hold on any cycle";
        r.evidence = ev.str();
    } catch (const CapExceeded& e) {
        r.status = CheckStatus::NotComputed;
        r.evidence = e.what();
    }
    return r;
}

CheckResult check_zero_multiplicity(const SignPattern& p, int cap) {
    CheckResult r{"zero_multiplicity",
                  "a consistent tridiagonal pattern of odd order has all near-maximum 2-cycle "
                  "covers of one sign (zero eigenvalue multiplicity at most one)",
                  CheckStatus::NotApplicable,
                  "",
                  {}};
    if (structural_class(p) != StructuralClass::Tridiagonal0Diag) return r;
    if (p.size() % 2 == 0) {
        r.status = CheckStatus::Satisfied;
        r.evidence = "order is even";
        return r;
    }
    try {
        SignedDigraph d(p);
        const int target = p.size() - 1;
        std::optional<CompositeCycle> low, high;
        int low_count = 0, high_count = 0;
        enumerate_composite_cycles(d, target, cap, [&](const CompositeCycle& c) {
            for (const auto& part : c.parts)
                if (part.length() != 2) return true;
            int neg = 0;
            for (const auto& part : c.parts)
                if (part.cycle_sign < 0) ++neg;
            if (!low || neg < low_count) {
                low = c;
                low_count = neg;
            }
            if (!high || neg > high_count) {
                high = c;
                high_count = neg;
            }
            return true;
        });
        if (!low || (high_count - low_count) % 2 == 0) {
            r.status = CheckStatus::Satisfied;
            r.evidence = low ? "all length-(n-1) covers share one sign parity"
                             : "no length-(n-1) 2-cycle covers";
            return r;
        }
        r.status = CheckStatus::Violated;
        std::ostringstream ev;
        ev << high->to_string() << " and " << low->to_string()
           << " are oppositely signed covers of length " << target;
        r.evidence = ev.str();
        int m = max_composite_cycle_length(d, cap);
        WitnessPlan plan;
        plan.origin = r.check_id;
        plan.real_side = *high;
        plan.real_bound = bound_from_parts(*high, p.size() - m);
        plan.complex_side = *low;
        plan.complex_bound = bound_from_parts(*low, 0);
        plan.complex_bound.min_real = 0;
        if (plan_valid(plan, p.size())) r.plans.push_back(plan);
    } catch (const CapExceeded& e) {
        r.status = CheckStatus::NotComputed;
        r.evidence = e.what();
    }
    return r;
}

std::vector<std::string> all_check_ids() {
    return {"odd_maximal_paths", "odd_maximal_paths_inertia", "forbidden_submatrices",
            "adjacent_leaves",   "cycle_graph",               "all_negative_odd_cycle",
            "unicyclic",         "multicycle",                "zero_multiplicity",
            "two_cycle_covers",  "mixed_covers"};
}

std::vector<CheckResult> run_check_battery(const SignPattern& p, int cap,
                                           const std::vector<std::string>& filter) {
    std::vector<CheckResult> out;
    auto wanted = [&](const std::string& id) {
        return filter.empty() || std::find(filter.begin(), filter.end(), id) != filter.end();
    };
    if (wanted("odd_maximal_paths")) out.push_back(check_odd_maximal_paths(p, cap));
    if (wanted("odd_maximal_paths_inertia")) out.push_back(check_unique_inertia_odd_paths(p, cap));
    if (wanted("forbidden_submatrices")) out.push_back(check_forbidden_submatrices(p, cap));
    if (wanted("adjacent_leaves")) out.push_back(check_adjacent_leaves(p, cap));
    if (wanted("cycle_graph")) out.push_back(check_cycle_graph(p, cap));
    if (wanted("all_negative_odd_cycle")) out.push_back(check_all_negative_odd_cycle(p));
    if (wanted("unicyclic")) out.push_back(check_unicyclic(p, cap));
    if (wanted("multicycle")) out.push_back(check_multicycle(p, cap));
    if (wanted("zero_multiplicity")) out.push_back(check_zero_multiplicity(p, cap));
    if (wanted("two_cycle_covers")) out.push_back(check_two_cycle_covers(p, cap));
    if (wanted("mixed_covers")) out.push_back(check_mixed_covers(p, cap));
    return out;
}

// --- sampling ---------------------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
    auto mix = [](std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    };
    return mix(mix(seed ^ mix(index + 1)) ^ (salt * 0xD1B54A32D192ED03ull));
}

namespace {

// xorshift-free portable generator: successive splitmix64 values.
struct SampleRng {
    std::uint64_t state;
    explicit SampleRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }
    double uniform(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

Eigen::MatrixXd draw_member(const SignPattern& p, SampleRng& rng) {
    const int n = p.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.at(i, j) != Sign::Zero)
                m(i, j) = sign_value(p.at(i, j)) * std::pow(10.0, rng.uniform(-2.0, 2.0));
    return m;
}

}  // namespace

FrequencyHistogram sample_frequencies(const SignPattern& p, int count, std::uint64_t seed,
                                      int workers) {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");
    if (workers <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        workers = count >= 64 ? static_cast<int>(std::min(hw ? hw : 1u, 8u)) : 1;
    }
    struct Partial {
        std::map<EigenFrequency, int> counts;
        std::map<EigenFrequency, std::pair<long, Eigen::MatrixXd>> reps;
        int resamples = 0;
    };
    std::vector<Partial> partials(workers);
    auto work = [&](int w) {
        Partial& part = partials[w];
        for (long i = w; i < count; i += workers) {
            SampleRng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
            Eigen::MatrixXd m = draw_member(p, rng);
            Spectrum s = eigen_frequency(m);
            if (s.borderline) {
                ++part.resamples;
                SampleRng rng2(derive_seed(seed, static_cast<std::uint64_t>(i), 1));
                m = draw_member(p, rng2);
                s = eigen_frequency(m);
            }
            ++part.counts[s.frequency];
            auto it = part.reps.find(s.frequency);
            if (it == part.reps.end() || i < it->second.first)
                part.reps[s.frequency] = {i, m};
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    FrequencyHistogram hist;
    for (const auto& part : partials) {
        for (const auto& [freq, c] : part.counts) hist.counts[freq] += c;
        for (const auto& [freq, rep] : part.reps) {
            auto it = hist.representatives.find(freq);
            if (it == hist.representatives.end() || rep.first < it->second.first)
                hist.representatives[freq] = rep;
        }
        hist.resamples += part.resamples;
    }
    return hist;
}

// --- verdict ----------------------------------------------------------------------

namespace {

// Diagonal-similarity argument for trees whose edges all carry one sign:
// all-positive is similar to a symmetric matrix (every eigenvalue real);
// all-negative to a skew-symmetric one, whose real eigenvalues are exactly
// the n - 2*matching zeros.
std::optional<std::pair<int, std::string>> uniform_tree_frequency(const SignPattern& p) {
    StructuralClass cls = structural_class(p);
    if (cls != StructuralClass::Tridiagonal0Diag && cls != StructuralClass::Tree0Diag)
        return std::nullopt;
    SignedUGraph g(p);
    bool all_plus = true, all_minus = true;
    for (const auto& e : g.edges()) {
        all_plus = all_plus && e.sign == Sign::Plus;
        all_minus = all_minus && e.sign == Sign::Minus;
    }
    if (all_plus)
        return std::make_pair(p.size(),
                              std::string("uniform positive tree: similar to a symmetric matrix"));
    if (all_minus) {
        int nu = max_matching(g).length();
        return std::make_pair(p.size() - 2 * nu,
                              std::string("uniform negative tree: similar to a skew-symmetric "
                                          "matrix of rank ") +
                                  std::to_string(2 * nu));
    }
    return std::nullopt;
}

VerdictWitness witness_from(const WitnessMatrix& w, const std::string& origin) {
    return VerdictWitness{w.matrix.values, w.frequency, w.eigenvalues, origin, w.recipe};
}

}  // namespace

Verdict verdict(const SignPattern& p, const AnalysisBudget& budget) {
    Verdict v;
    v.checks = run_check_battery(p, budget.cap, budget.checks);

    try {
        v.coeff_signs = coeff_sign_vector(p, budget.cap);
        v.descartes = forced_real_root_count(*v.coeff_signs, p.size());
    } catch (const CapExceeded& e) {
        v.notes.push_back(std::string("coefficient sign analysis not computed: ") + e.what());
    }

    if (budget.sampling) v.histogram = sample_frequencies(p, budget.samples, budget.seed);

    // Sufficient conditions.
    if (v.descartes && v.descartes->exact) {
        v.kind = Verdict::Kind::ConsistentProven;
        v.real_count = v.descartes->real_count;
        v.reason = "coefficient sign analysis forces the real eigenvalue count";
        return v;
    }
    if (auto tree = uniform_tree_frequency(p)) {
        v.kind = Verdict::Kind::ConsistentProven;
        v.real_count = tree->first;
        v.reason = tree->second;
        return v;
    }
    for (const auto& c : v.checks)
        if (c.check_id == "all_negative_odd_cycle" && c.status == CheckStatus::Satisfied) {
            v.kind = Verdict::Kind::ConsistentProven;
            v.real_count = 1;
            v.reason = "odd cycle with all edges negative";
            return v;
        }

    // Violated necessary conditions: realize the implied witness pairs.
    for (const auto& c : v.checks) {
        if (c.status != CheckStatus::Violated) continue;
        for (const auto& plan : c.plans) {
            try {
                WitnessRecipe real_recipe{WitnessRecipe::Kind::CompositePowers, plan.real_side};
                WitnessRecipe complex_recipe{WitnessRecipe::Kind::CompositePowers,
                                             plan.complex_side};
                WitnessMatrix wa = calibrate(p, real_recipe, plan.real_bound);
                WitnessMatrix wb = calibrate(p, complex_recipe, plan.complex_bound);
                if (wa.frequency == wb.frequency) {
                    v.notes.push_back("witness pair from " + plan.origin +
                                      " failed to separate frequencies");
                    continue;
                }
                // Re-verify both at emission time.
                if (!sign_compatible(p, wa.matrix.values) || !sign_compatible(p, wb.matrix.values))
                    continue;
                if (eigen_frequency(wa.matrix.values).frequency != wa.frequency) continue;
                if (eigen_frequency(wb.matrix.values).frequency != wb.frequency) continue;
                v.kind = Verdict::Kind::InconsistentProven;
                v.reason = "calibrated witness pair from " + plan.origin;
                v.witnesses.push_back(witness_from(wa, plan.origin));
                v.witnesses.push_back(witness_from(wb, plan.origin));
                return v;
            } catch (const CalibrationError& e) {
                v.notes.push_back(std::string("calibration anomaly: ") + e.what());
            }
        }
    }

    // Sampling falsification: two observed frequencies disprove consistency.
    if (budget.sampling && v.histogram.distinct() >= 2) {
        auto lo = v.histogram.representatives.begin();
        auto hi = std::prev(v.histogram.representatives.end());
        for (auto* rep : {&*lo, &*hi}) {
            Spectrum s = eigen_frequency(rep->second.second);
            v.witnesses.push_back(VerdictWitness{
                rep->second.second, s.frequency, s.eigenvalues,
                "sample #" + std::to_string(rep->second.first), std::nullopt});
        }
        if (v.witnesses.size() == 2 && v.witnesses[0].frequency != v.witnesses[1].frequency) {
            v.kind = Verdict::Kind::InconsistentProven;
            v.reason = "sampling found members with distinct frequencies";
            return v;
        }
        v.witnesses.clear();
        v.notes.push_back("histogram bins disagreed with re-verification; result left undetermined");
    }

    v.kind = Verdict::Kind::Undetermined;
    std::ostringstream reason;
    reason << "no sufficient condition fired";
    if (budget.sampling)
        reason << "; " << v.histogram.distinct() << " frequency bin(s) in " << budget.samples
               << " samples";
    v.reason = reason.str();
    return v;
}

// --- census ----------------------------------------------------------------------

std::vector<CensusRow> classify_small_tridiagonal(int n, const AnalysisBudget& budget) {
    if (n < 2 || n > 6) throw std::invalid_argument("census covers 2 <= n <= 6");
    std::vector<std::string> seen;
    std::vector<CensusRow> rows;
    const int edges = n - 1;
    for (int mask = 0; mask < (1 << edges); ++mask) {
        EdgeWord w(edges);
        for (int i = 0; i < edges; ++i) w[i] = (mask >> i) & 1 ? Sign::Minus : Sign::Plus;
        EdgeWord canon = canonical_word(w);
        std::string key = word_string(canon);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        rows.push_back({canon, verdict(pattern_from_word(canon), budget)});
    }
    std::sort(rows.begin(), rows.end(), [](const CensusRow& a, const CensusRow& b) {
        return word_string(a.word) < word_string(b.word);
    });
    return rows;
}

const std::map<int, std::map<std::string, EigenFrequency>>& consistent_census_fixture() {
    static const std::map<int, std::map<std::string, EigenFrequency>> fixture = {
        {2, {{"+", {2, 0}}, {"-", {0, 2}}}},
        {3, {{"++", {3, 0}}, {"--", {1, 2}}}},
        {4, {{"+++", {4, 0}}, {"++-", {2, 2}}, {"+--", {2, 2}}, {"---", {0, 4}}}},
        {5, {{"++++", {5, 0}}, {"++--", {3, 2}}, {"----", {1, 4}}}},
    };
    return fixture;
}

std::optional<std::string> verify_census_fixture(const std::vector<CensusRow>& rows, int n) {
    auto it = consistent_census_fixture().find(n);
    if (it == consistent_census_fixture().end()) return "no fixture for n=" + std::to_string(n);
    const auto& expected = it->second;
    for (const auto& row : rows) {
        std::string key = word_string(row.word);
        auto hit = expected.find(key);
        if (row.verdict.kind == Verdict::Kind::ConsistentProven) {
            if (hit == expected.end())
                return "word " + key + " was proven consistent but is not in the published census";
            EigenFrequency freq{row.verdict.real_count, n - row.verdict.real_count};
            if (!(freq == hit->second))
                return "word " + key + " has frequency " + freq.to_string() + ", expected " +
                       hit->second.to_string();
        } else if (hit != expected.end()) {
            return "word " + key + " is in the published census but was not proven consistent";
        }
        if (row.verdict.kind == Verdict::Kind::Undetermined && hit == expected.end())
            return "word " + key + " was left undetermined; the census decides every class";
    }
    return std::nullopt;
}

}  // namespace spm
