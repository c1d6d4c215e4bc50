#include <doctest.h>

#include <algorithm>
#include <complex>

#include "fixtures.hpp"
#include "spm/errors.hpp"
#include "spm/graphs.hpp"
#include "spm/spectral.hpp"

using namespace spm;

namespace {

// Multiset match of two complex lists within a pairing tolerance.
bool multiset_close(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b,
                    double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        double best = 1e300;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (std::abs(b[i] - x) < best) {
                best = std::abs(b[i] - x);
                best_i = i;
            }
        if (best > tol) return false;
        b.erase(b.begin() + best_i);
    }
    return true;
}

bool contains_close(const std::vector<std::complex<double>>& evs, std::complex<double> target,
                    double tol) {
    for (const auto& ev : evs)
        if (std::abs(ev - target) <= tol) return true;
    return false;
}

// Cofactor-expansion determinant, independent of the LU path.
double cofactor_det(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 1) return m(0, 0);
    double det = 0.0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0.0) continue;
        Eigen::MatrixXd sub(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c)
                if (c != j) sub(r - 1, cc++) = m(r, c);
        }
        det += (j % 2 ? -1.0 : 1.0) * m(0, j) * cofactor_det(sub);
    }
    return det;
}

// E_k as sums of principal minors via the cofactor oracle.
std::vector<double> char_poly_oracle(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> e(n, 0.0);
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) idx.push_back(i);
        Eigen::MatrixXd sub(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
        e[idx.size() - 1] += cofactor_det(sub);
    }
    return e;
}

}  // namespace

TEST_CASE("eigenvalue frequency of the 6x6 counterexample members") {
    Spectrum s1 = eigen_frequency(fixtures::counterexample6_b1());
    CHECK(s1.frequency == EigenFrequency{0, 6});
    CHECK(contains_close(s1.eigenvalues, {1.3071, 0.2151}, 1e-3));
    CHECK(contains_close(s1.eigenvalues, {-1.3071, 0.2151}, 1e-3));
    CHECK(contains_close(s1.eigenvalues, {-1.3071, -0.2151}, 1e-3));
    CHECK(contains_close(s1.eigenvalues, {0.0, 0.5698}, 1e-3));
    CHECK(contains_close(s1.eigenvalues, {0.0, -0.5698}, 1e-3));

    Spectrum s2 = eigen_frequency(fixtures::counterexample6_b2());
    CHECK(s2.frequency == EigenFrequency{4, 2});
    CHECK(contains_close(s2.eigenvalues, {1.5538, 0.0}, 1e-3));
    CHECK(contains_close(s2.eigenvalues, {-1.5538, 0.0}, 1e-3));
    CHECK(contains_close(s2.eigenvalues, {1.4142, 0.0}, 1e-3));
    CHECK(contains_close(s2.eigenvalues, {-1.4142, 0.0}, 1e-3));
    CHECK(contains_close(s2.eigenvalues, {0.0, 0.6436}, 1e-3));
}

TEST_CASE("trivial frequencies") {
    Spectrum s = eigen_frequency(Eigen::MatrixXd::Zero(1, 1));
    CHECK(s.frequency == EigenFrequency{1, 0});
    CHECK_THROWS_AS(eigen_frequency(Eigen::MatrixXd::Constant(2, 2,
                                                              std::nan(""))),
                    std::invalid_argument);
}

TEST_CASE("borderline discriminants are flagged") {
    Eigen::MatrixXd m = matrix_from_rows({{0, 1}, {-1e-30, 0}});
    Spectrum s = eigen_frequency(m);
    CHECK(s.borderline);
}

TEST_CASE("inertia") {
    CHECK(inertia(matrix_from_rows({{0, -1}, {1, 0}})) == Inertia{0, 0, 2});
    CHECK(inertia(matrix_from_rows({{0, 1}, {1, 0}})) == Inertia{1, 1, 0});
    CHECK(inertia(Eigen::MatrixXd::Identity(3, 3)) == Inertia{3, 0, 0});
}

TEST_CASE("characteristic polynomial coefficients") {
    SUBCASE("weighted 4-cycle with unit magnitudes") {
        Eigen::MatrixXd m = matrix_from_rows(
            {{0, -1, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1}, {1, 0, 1, 0}});
        auto e = char_poly_coeffs(m);
        CHECK(e[0] == doctest::Approx(0.0));
        CHECK(e[1] == doctest::Approx(4.0));  // ac+bg+ed+fh with unit magnitudes
        CHECK(e[2] == doctest::Approx(0.0));
        CHECK(e[3] == doctest::Approx(4.0));  // acfh+adfg+ebch+ebdg
    }
    SUBCASE("diagonal matrix gives elementary symmetric functions") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
        m(0, 0) = 1;
        m(1, 1) = 2;
        m(2, 2) = 3;
        auto e = char_poly_coeffs(m);
        CHECK(e[0] == doctest::Approx(6.0));
        CHECK(e[1] == doctest::Approx(11.0));
        CHECK(e[2] == doctest::Approx(6.0));
    }
    SUBCASE("battery-satisfying nonsingular member against the cofactor oracle") {
        Eigen::MatrixXd m = fixtures::delta_nonsingular_member();
        auto e = char_poly_coeffs(m);
        auto oracle = char_poly_oracle(m);
        REQUIRE(e.size() == 4);
        for (int k = 0; k < 4; ++k) CHECK(e[k] == doctest::Approx(oracle[k]).epsilon(1e-12));
        CHECK(e[0] == doctest::Approx(4.0));
        CHECK(e[1] == doctest::Approx(3.0));
        CHECK(e[2] == doctest::Approx(4.0));
        CHECK(e[3] == doctest::Approx(24.0));
    }
}

TEST_CASE("spectral cross-checks on random matrices") {
    fixtures::TestRng rng(101);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + rng.below(5);
        SignPattern p = fixtures::random_pattern(rng, n, 1);
        Eigen::MatrixXd m = fixtures::random_member(rng, p);
        Spectrum s = eigen_frequency(m);

        std::complex<double> prod{1.0, 0.0}, sum{0.0, 0.0};
        for (const auto& ev : s.eigenvalues) {
            prod *= ev;
            sum += ev;
        }
        double scale = std::max(1.0, std::abs(prod));
        CHECK(std::abs(prod.real() - m.determinant()) <= 1e-6 * scale);
        CHECK(std::abs(prod.imag()) <= 1e-6 * scale);
        CHECK(std::abs(sum.real() - m.trace()) <= 1e-6 * std::max(1.0, std::abs(m.trace())));

        // E_k reconstructed from eigenvalues via elementary symmetric sums.
        auto e = char_poly_coeffs(m);
        std::vector<std::complex<double>> sym(n + 1, {0.0, 0.0});
        sym[0] = 1.0;
        for (const auto& ev : s.eigenvalues)
            for (int k = n; k >= 1; --k) sym[k] += sym[k - 1] * ev;
        for (int k = 1; k <= n; ++k) {
            double tol = 1e-6 * std::max({1.0, std::abs(sym[k]), std::abs(e[k - 1])});
            CHECK(std::abs(sym[k].real() - e[k - 1]) <= tol);
            CHECK(std::abs(sym[k].imag()) <= tol);
        }
    }
}

TEST_CASE("even-order tree members have symmetric spectra") {
    fixtures::TestRng rng(55);
    for (int it = 0; it < 200; ++it) {
        int n = rng.below(2) ? 4 : 6;
        SignPattern p = fixtures::random_tree_pattern(rng, n);
        Eigen::MatrixXd m = fixtures::random_member(rng, p);
        Spectrum s = eigen_frequency(m);
        std::vector<std::complex<double>> negated;
        for (const auto& ev : s.eigenvalues) negated.push_back(-ev);
        CHECK(multiset_close(s.eigenvalues, negated, 1e-6 * (1.0 + m.norm())));
    }
}

TEST_CASE("edge-negated tree companion rotates the spectrum by i") {
    fixtures::TestRng rng(66);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + rng.below(6);  // up to 7
        SignPattern p = fixtures::random_tree_pattern(rng, n);
        SignPattern pm = negate_tree_edges(p);
        Eigen::MatrixXd b = fixtures::random_member(rng, p);
        Eigen::MatrixXd bm = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                bm(i, j) = sign_value(pm.at(i, j)) * std::abs(b(i, j));
        std::vector<std::complex<double>> rotated;
        for (const auto& ev : eigen_frequency(b).eigenvalues)
            rotated.push_back(ev * std::complex<double>{0.0, 1.0});
        CHECK(multiset_close(eigen_frequency(bm).eigenvalues, rotated, 1e-6 * (1.0 + b.norm())));
    }
}

TEST_CASE("coefficient sign vectors") {
    SUBCASE("tridiagonal word (+,+,-)") {
        CoeffSignVector v = coeff_sign_vector(pattern_from_word({Sign::Plus, Sign::Plus,
                                                                 Sign::Minus}));
        CHECK(v.to_string() == "0*0-");
    }
    SUBCASE("all-negative odd cycle") {
        SignPattern p = fixtures::symmetric_from_edges(5, {{1, 2, Sign::Minus},
                                                           {2, 3, Sign::Minus},
                                                           {3, 4, Sign::Minus},
                                                           {4, 5, Sign::Minus},
                                                           {5, 1, Sign::Minus}});
        CoeffSignVector v = coeff_sign_vector(p);
        CHECK(v.to_string() == "0+0+*");
    }
    SUBCASE("nilpotent triangular pattern") {
        SignPattern p(3);
        p.set(0, 1, Sign::Plus);
        p.set(1, 2, Sign::Minus);
        CoeffSignVector v = coeff_sign_vector(p);
        CHECK(v.to_string() == "000");
    }
}

TEST_CASE("forced real root counts") {
    SUBCASE("word (+,+,-): one positive, one negative, no zero") {
        CoeffSignVector v = coeff_sign_vector(pattern_from_word({Sign::Plus, Sign::Plus,
                                                                 Sign::Minus}));
        DescartesResult r = forced_real_root_count(v, 4);
        CHECK(r.exact);
        CHECK(r.real_count == 2);
        CHECK(r.positive == 1);
        CHECK(r.negative == 1);
        CHECK(r.zero == 0);
    }
    SUBCASE("all-negative odd cycles force exactly one real root") {
        for (int n : {3, 5, 7}) {
            std::vector<fixtures::EdgeSpec> edges;
            for (int i = 0; i < n; ++i) edges.push_back({i + 1, (i + 1) % n + 1, Sign::Minus});
            CoeffSignVector v = coeff_sign_vector(fixtures::symmetric_from_edges(n, edges));
            DescartesResult r = forced_real_root_count(v, n);
            CHECK(r.exact);
            CHECK(r.real_count == 1);
            // The positive/negative/zero split differs per branch of E_n.
            CHECK(r.positive == -1);
        }
    }
    SUBCASE("all-zero vector: every root is zero") {
        CoeffSignVector v;
        v.status.assign(3, CoeffStatus::Zero);
        DescartesResult r = forced_real_root_count(v, 3);
        CHECK(r.exact);
        CHECK(r.real_count == 3);
        CHECK(r.zero == 3);
        CHECK(r.positive == 0);
        CHECK(r.negative == 0);
    }
    SUBCASE("uniform-sign words agree with the symmetric/skew ground truth") {
        // All-positive word: members are similar to symmetric matrices with
        // S=(n,0); the sign analysis alone cannot pin that but must contain it.
        DescartesResult r1 = forced_real_root_count(
            coeff_sign_vector(pattern_from_word({Sign::Plus, Sign::Plus, Sign::Plus})), 4);
        CHECK_FALSE(r1.exact);
        CHECK(r1.max_real == 4);
        CHECK(r1.min_real == 0);
        // All-negative word, even order: skew ground truth S=(0,4), pinned.
        DescartesResult r2 = forced_real_root_count(
            coeff_sign_vector(pattern_from_word({Sign::Minus, Sign::Minus, Sign::Minus})), 4);
        CHECK(r2.exact);
        CHECK(r2.real_count == 0);
        // All-negative word, odd order: S=(1,n-1) via the forced zero root.
        DescartesResult r3 = forced_real_root_count(
            coeff_sign_vector(
                pattern_from_word({Sign::Minus, Sign::Minus, Sign::Minus, Sign::Minus})),
            5);
        CHECK(r3.exact);
        CHECK(r3.real_count == 1);
        CHECK(r3.zero == 1);
    }
}

TEST_CASE("dual-path coefficient computation stays consistent") {
    fixtures::TestRng rng(202);
    for (int it = 0; it < 50; ++it) {
        int n = 2 + rng.below(6);
        SignPattern p = fixtures::random_pattern(rng, n, 1);
        Eigen::MatrixXd m = fixtures::random_member(rng, p);
        CHECK_NOTHROW(char_poly_coeffs(m));
        auto a = char_poly_coeffs_minors(m);
        auto b = char_poly_coeffs_traces(m);
        for (int k = 1; k <= n; ++k)
            CHECK(std::abs(a[k - 1] - b[k - 1]) <=
                  1e-8 * std::max({1.0, std::abs(a[k - 1]), std::abs(b[k - 1])}));
    }
}
