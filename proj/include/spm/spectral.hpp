#ifndef SPM_SPECTRAL_HPP
#define SPM_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "spm/pattern.hpp"

namespace spm {

struct EigenFrequency {
    int real_count = 0;
    int complex_count = 0;  // always even

    bool operator==(const EigenFrequency&) const = default;
    bool operator<(const EigenFrequency& o) const {
        return real_count < o.real_count ||
               (real_count == o.real_count && complex_count < o.complex_count);
    }
    std::string to_string() const;
};

struct Inertia {
    int plus = 0, minus = 0, zero = 0;
    bool operator==(const Inertia&) const = default;
    std::string to_string() const;
};

struct Spectrum {
    EigenFrequency frequency;
    std::vector<std::complex<double>> eigenvalues;
    // A 2x2 block of the quasi-triangular factor had its discriminant within
    // 1e-12 * (1+||m||_F)^2 of zero; real/nonreal classification of that pair
    // is numerically fragile and the caller should re-evaluate at a nearby
    // sample.
    bool borderline = false;
};

// Eigenvalues via reduction to real block upper-triangular (Schur) form.
// Realness is decided by block structure: each 2x2 diagonal block with
// negative discriminant contributes one conjugate pair; everything else is
// real. No imaginary-part threshold is involved.
Spectrum eigen_frequency(const Eigen::MatrixXd& m);

// Counts eigenvalues by real part; |Re| <= zero_tol * (1 + ||m||_F) counts as
// zero.
Inertia inertia(const Eigen::MatrixXd& m, double zero_tol = 1e-9);

// Coefficient data E_1..E_n of the characteristic polynomial
//   x^n - E_1 x^(n-1) + E_2 x^(n-2) - ... + (-1)^n E_n,
// i.e. E_k = sum of k x k principal minors. Computed by trace recursion and,
// for n <= minors_check_limit, re-derived from principal minors as a
// numerical self-check (NumericalError on disagreement beyond 1e-8 relative).
std::vector<double> char_poly_coeffs(const Eigen::MatrixXd& m, int minors_check_limit = 12);

std::vector<double> char_poly_coeffs_minors(const Eigen::MatrixXd& m);
std::vector<double> char_poly_coeffs_traces(const Eigen::MatrixXd& m);

// --- qualitative coefficient signs and Descartes analysis --------------------

enum class CoeffStatus { Zero, Plus, Minus, Indeterminate };

char coeff_status_char(CoeffStatus s);

// Per-degree sign status of E_k over the whole qualitative class of a
// pattern: Plus/Minus when every properly signed length-k cycle term agrees,
// Zero when there are none, Indeterminate when mixed.
struct CoeffSignVector {
    std::vector<CoeffStatus> status;  // status[k-1] is the status of E_k
    int order() const { return static_cast<int>(status.size()); }
    std::string to_string() const;
};

CoeffSignVector coeff_sign_vector(const SignPattern& p, int cap = 12);

// Result of exhaustive Descartes analysis over all resolutions of the
// Indeterminate coefficient statuses.
struct DescartesResult {
    // True iff in every resolution both half-line counts are pinned (sign
    // change count <= 1 cannot drop by an even integer) and the total number
    // of real roots is the same across resolutions.
    bool exact = false;
    int real_count = -1;  // forced total, valid when exact

    // Per-category counts when uniform across resolutions, else -1.
    int positive = -1, negative = -1, zero = -1;

    // Bounds over all resolutions (Range view).
    int min_real = 0, max_real = 0;

    std::string to_string() const;
};

DescartesResult forced_real_root_count(const CoeffSignVector& v, int n);

// --- helpers shared by witness construction and tests --------------------------

Eigen::MatrixXd matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows);

// Strict entrywise sign compatibility between a real matrix and a pattern.
bool sign_compatible(const SignPattern& p, const Eigen::MatrixXd& m);

// A concrete member of a qualitative class; construction asserts
// entrywise sign compatibility.
struct QMatrix {
    SignPattern pattern;
    Eigen::MatrixXd values;

    QMatrix(SignPattern p, Eigen::MatrixXd v);
};

}  // namespace spm

#endif
