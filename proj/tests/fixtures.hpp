#ifndef SPM_TEST_FIXTURES_HPP
#define SPM_TEST_FIXTURES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spm/pattern.hpp"
#include "spm/spectral.hpp"

namespace spm::fixtures {

struct EdgeSpec {
    int u, v;  // 1-based
    Sign sign;
};

// Combinatorially symmetric 0-diagonal pattern realizing the given undirected
// edge signs: entry (u,v) carries the edge sign, entry (v,u) is '+', so the
// edge product equals the requested sign.
inline SignPattern symmetric_from_edges(int n, const std::vector<EdgeSpec>& edges) {
    SignPattern p(n);
    for (const auto& e : edges) {
        p.set(e.u - 1, e.v - 1, e.sign);
        p.set(e.v - 1, e.u - 1, Sign::Plus);
    }
    return p;
}

// 6x6 tridiagonal pattern with exactly one odd maximal signed path that is
// nevertheless not consistent; the matrices b1/b2 below exhibit S=(0,6) and
// S=(4,2).
inline SignPattern counterexample6() {
    return SignPattern::from_rows({"0 + 0 0 0 0", "+ 0 + 0 0 0", "0 + 0 - 0 0", "0 0 + 0 + 0",
                                   "0 0 0 + 0 +", "0 0 0 0 + 0"});
}

inline Eigen::MatrixXd counterexample6_b1() {
    return matrix_from_rows({{0, 1, 0, 0, 0, 0},
                             {1, 0, 1, 0, 0, 0},
                             {0, 1, 0, -1, 0, 0},
                             {0, 0, 1, 0, 1, 0},
                             {0, 0, 0, 1, 0, 1},
                             {0, 0, 0, 0, 1, 0}});
}

inline Eigen::MatrixXd counterexample6_b2() {
    Eigen::MatrixXd m = counterexample6_b1();
    m(5, 4) = 2;
    return m;
}

// 5-vertex tree (leaf path 1-2-3, leaves 4 and 5 on vertex 3) and its
// edge-negated companion.
inline SignPattern tree5() {
    return SignPattern::from_rows({"0 + 0 0 0", "- 0 + 0 0", "0 + 0 + +", "0 0 - 0 0",
                                   "0 0 - 0 0"});
}

inline SignPattern tree5_negated() {
    return SignPattern::from_rows({"0 + 0 0 0", "+ 0 + 0 0", "0 - 0 + +", "0 0 + 0 0",
                                   "0 0 + 0 0"});
}

// n=5 tridiagonal pattern with word ++-+ whose two maximum 2-cycle covers
// carry 1 and 2 negative 2-cycles.
inline SignPattern covers5() {
    return SignPattern::from_rows(
        {"0 + 0 0 0", "+ 0 + 0 0", "0 + 0 - 0", "0 0 + 0 +", "0 0 0 + 0"});
}

// Star with center 1 and oppositely signed leaf edges {1,2}+ and {1,3}-.
inline SignPattern star5_mixed() {
    return SignPattern::from_rows(
        {"0 + + + +", "+ 0 0 0 0", "- 0 0 0 0", "+ 0 0 0 0", "+ 0 0 0 0"});
}

inline SignPattern star5_allplus() {
    return SignPattern::from_rows(
        {"0 + + + +", "+ 0 0 0 0", "+ 0 0 0 0", "+ 0 0 0 0", "+ 0 0 0 0"});
}

// Cycle graphs.
inline SignPattern cycle4_allplus() {
    return SignPattern::from_rows({"0 + 0 +", "+ 0 + 0", "0 + 0 +", "+ 0 + 0"});
}

// Cycle word (-,-,-,+): more than one odd maximal signed path.
inline SignPattern cycle4_one_plus() {
    return SignPattern::from_rows({"0 - 0 +", "+ 0 - 0", "0 + 0 -", "+ 0 + 0"});
}

inline SignPattern triangle_allplus() {
    return SignPattern::from_rows({"0 + +", "+ 0 +", "+ + 0"});
}

// All-negative 4-cycle that defeats the cycle-graph conditions yet is not
// consistent; b1/b2 realize S=(2,2) and S=(0,4).
inline SignPattern cycle4_allneg_inconsistent() {
    return SignPattern::from_rows({"0 - 0 -", "+ 0 - 0", "0 + 0 +", "+ 0 - 0"});
}

inline Eigen::MatrixXd cycle4_allneg_b1() {
    return matrix_from_rows(
        {{0, -10, 0, -1}, {1, 0, -10, 0}, {0, 1, 0, 10}, {10, 0, -1, 0}});
}

inline Eigen::MatrixXd cycle4_allneg_b2() {
    return matrix_from_rows(
        {{0, -10, 0, -1}, {10, 0, -1, 0}, {0, 1, 0, 10}, {1, 0, -10, 0}});
}

// All-negative 4-cycle that is consistent with S=(0,4).
inline SignPattern cycle4_allneg_consistent() {
    return SignPattern::from_rows({"0 - 0 -", "+ 0 - 0", "0 + 0 -", "+ 0 + 0"});
}

// Two adjacent positive edges: consistent with S=(2,2).
inline SignPattern cycle4_two_plus_consistent() {
    return SignPattern::from_rows({"0 - 0 +", "+ 0 - 0", "0 + 0 +", "+ 0 + 0"});
}

// Same edge word as above but different cycle products: not consistent.
inline SignPattern cycle4_two_plus_inconsistent() {
    return SignPattern::from_rows({"0 + 0 +", "- 0 - 0", "0 + 0 +", "+ 0 + 0"});
}

inline Eigen::MatrixXd cycle4_two_plus_b1() {
    return matrix_from_rows({{0, 1, 0, 1}, {-1, 0, -1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}});
}

inline Eigen::MatrixXd cycle4_two_plus_b2() {
    return matrix_from_rows({{0, 2, 0, 1}, {-1, 0, -1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}});
}

// Unicyclic, n=10: all-positive 4-cycle 1234, pendant trees 4-5-6 and
// 3-7-{8,9,10}, every leaf at even distance from the cycle.
inline SignPattern unicyclic10_nonadjacent_plus() {
    return symmetric_from_edges(10, {{1, 2, Sign::Plus},
                                     {2, 3, Sign::Plus},
                                     {3, 4, Sign::Plus},
                                     {1, 4, Sign::Plus},
                                     {4, 5, Sign::Plus},
                                     {5, 6, Sign::Plus},
                                     {3, 7, Sign::Minus},
                                     {7, 8, Sign::Plus},
                                     {7, 9, Sign::Plus},
                                     {7, 10, Sign::Plus}});
}

// Same shape with cycle word (-,-,-,+): two odd maximal signed paths.
inline SignPattern unicyclic10_odd_paths() {
    return symmetric_from_edges(10, {{1, 2, Sign::Minus},
                                     {2, 3, Sign::Minus},
                                     {3, 4, Sign::Minus},
                                     {1, 4, Sign::Plus},
                                     {4, 5, Sign::Plus},
                                     {5, 6, Sign::Plus},
                                     {3, 7, Sign::Minus},
                                     {7, 8, Sign::Plus},
                                     {7, 9, Sign::Plus},
                                     {7, 10, Sign::Plus}});
}

// Unicyclic, n=9: all-positive triangle 123 with pendant trees keeping leaf
// distances even.
inline SignPattern unicyclic9_triangle() {
    return symmetric_from_edges(9, {{1, 2, Sign::Plus},
                                    {1, 3, Sign::Plus},
                                    {2, 3, Sign::Plus},
                                    {3, 4, Sign::Plus},
                                    {4, 5, Sign::Plus},
                                    {2, 6, Sign::Minus},
                                    {6, 7, Sign::Plus},
                                    {6, 8, Sign::Plus},
                                    {6, 9, Sign::Plus}});
}

// Leafless, n=7: all-positive square 1234 joined to triangle 567 by the edge
// {4,5} (odd path-adjacent distance).
inline SignPattern twocycles7() {
    return symmetric_from_edges(7, {{1, 2, Sign::Plus},
                                    {2, 3, Sign::Plus},
                                    {3, 4, Sign::Plus},
                                    {1, 4, Sign::Plus},
                                    {4, 5, Sign::Plus},
                                    {5, 6, Sign::Plus},
                                    {6, 7, Sign::Plus},
                                    {5, 7, Sign::Plus}});
}

// Leafless, n=8: square with word (-,-,-,+) joined to an all-positive square.
inline SignPattern twocycles8() {
    return symmetric_from_edges(8, {{1, 2, Sign::Minus},
                                    {2, 3, Sign::Minus},
                                    {3, 4, Sign::Minus},
                                    {1, 4, Sign::Plus},
                                    {4, 5, Sign::Plus},
                                    {5, 6, Sign::Plus},
                                    {6, 7, Sign::Plus},
                                    {7, 8, Sign::Plus},
                                    {5, 8, Sign::Plus}});
}

// Octagon with edge signs -,-,-,+,+,-,+,+ around 1..8.
inline SignPattern octagon() {
    return symmetric_from_edges(8, {{1, 2, Sign::Minus},
                                    {2, 3, Sign::Minus},
                                    {3, 4, Sign::Minus},
                                    {4, 5, Sign::Plus},
                                    {5, 6, Sign::Plus},
                                    {6, 7, Sign::Minus},
                                    {7, 8, Sign::Plus},
                                    {8, 1, Sign::Plus}});
}

// 9-cycle whose positive and negative matchings reach total length n+3.
inline SignPattern ninecycle() {
    return symmetric_from_edges(9, {{1, 2, Sign::Minus},
                                    {2, 3, Sign::Minus},
                                    {3, 4, Sign::Minus},
                                    {4, 5, Sign::Plus},
                                    {5, 6, Sign::Plus},
                                    {6, 7, Sign::Plus},
                                    {7, 8, Sign::Minus},
                                    {8, 9, Sign::Plus},
                                    {9, 1, Sign::Plus}});
}

// --- 2-consistency fixtures ---------------------------------------------------

// Sign singular; passes the whole sign-singular battery yet the member below
// has eigenvalues {0,-1,-2,-3}.
inline SignPattern delta_sign_singular_pattern() {
    return SignPattern::from_rows({"0 0 0 -", "+ - + 0", "0 - 0 -", "0 + 0 0"});
}

inline Eigen::MatrixXd delta_sign_singular_member() {
    return matrix_from_rows(
        {{0, 0, 0, -1}, {3, -6, 1, 0}, {0, -11, 0, -3}, {0, 1, 0, 0}});
}

// Allows singularity; battery-satisfying; the member below has four real
// eigenvalues.
inline SignPattern delta_allows_pattern() {
    return SignPattern::from_rows({"+ + 0 0", "0 0 + 0", "0 0 - +", "+ + 0 0"});
}

inline Eigen::MatrixXd delta_allows_member() {
    return matrix_from_rows({{7, 6, 0, 0}, {0, 0, 1, 0}, {0, 0, -5, 1}, {2, 4, 0, 0}});
}

// Sign nonsingular; battery-satisfying; the member below has no real
// eigenvalue (characteristic polynomial x^4 - 4x^3 + 3x^2 - 4x + 24).
inline SignPattern delta_nonsingular_pattern() {
    return SignPattern::from_rows({"+ + 0 0", "0 0 + 0", "0 0 + +", "- + 0 0"});
}

inline Eigen::MatrixXd delta_nonsingular_member() {
    return matrix_from_rows({{3, 6, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}, {-2, 4, 0, 0}});
}

// --- deterministic pseudo-random helpers -----------------------------------------

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    Sign sign_nonzero() { return below(2) ? Sign::Plus : Sign::Minus; }
};

inline SignPattern random_pattern(TestRng& rng, int n, int zero_weight = 2) {
    SignPattern p(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int roll = rng.below(zero_weight + 2);
            p.set(i, j, roll == 0 ? Sign::Plus : (roll == 1 ? Sign::Minus : Sign::Zero));
        }
    return p;
}

// Random tree pattern with a 0-diagonal (random attachment order).
inline SignPattern random_tree_pattern(TestRng& rng, int n) {
    SignPattern p(n);
    for (int v = 1; v < n; ++v) {
        int parent = rng.below(v);
        p.set(v, parent, rng.sign_nonzero());
        p.set(parent, v, rng.sign_nonzero());
    }
    return p;
}

inline Eigen::MatrixXd random_member(TestRng& rng, const SignPattern& p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p.size(), p.size());
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (p.at(i, j) != Sign::Zero)
                m(i, j) = sign_value(p.at(i, j)) * std::pow(10.0, rng.uniform(-1.0, 1.0));
    return m;
}

}  // namespace spm::fixtures

#endif
