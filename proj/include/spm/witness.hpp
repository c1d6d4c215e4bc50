#ifndef SPM_WITNESS_HPP
#define SPM_WITNESS_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "spm/graphs.hpp"
#include "spm/pattern.hpp"
#include "spm/spectral.hpp"

namespace spm {

// Lower bounds a constructed witness is required to exhibit.
struct FrequencyBound {
    int min_real = 0;
    int min_complex = 0;

    bool satisfied(const EigenFrequency& f) const {
        return f.real_count >= min_real && f.complex_count >= min_complex;
    }
    std::string to_string() const;
};

struct WitnessRecipe {
    enum class Kind { SimpleCycleUnit, CompositePowers, MScaled, Interpolated };
    Kind kind = Kind::CompositePowers;
    CompositeCycle support;            // the weighted cycles (gamma_1 for Interpolated)
    CompositeCycle secondary;          // gamma_2 for Interpolated; inner support for MScaled
    std::vector<int> inner_vertices;   // MScaled embedding set (sorted)
    double epsilon = 0.0;
    double m_scale = 0.0;              // MScaled weight base
    double t = 0.0;                    // Interpolated parameter

    std::string describe() const;
};

std::string recipe_kind_name(WitnessRecipe::Kind k);

struct WitnessMatrix {
    WitnessRecipe recipe;
    QMatrix matrix;
    EigenFrequency frequency;
    std::vector<std::complex<double>> eigenvalues;
    FrequencyBound predicted;
    bool calibrated = false;
};

class CalibrationError : public std::runtime_error {
public:
    CalibrationError(std::string msg, EigenFrequency last)
        : std::runtime_error(std::move(msg)), last_(last) {}
    EigenFrequency last_frequency() const { return last_; }

private:
    EigenFrequency last_;
};

// --- constructions -------------------------------------------------------------
//
// All builders place the construction's magnitudes on the named cycles with
// the pattern's signs, epsilon (with the pattern's sign) on the rest of the
// support, and zero elsewhere. epsilon = 0 gives the unperturbed base matrix,
// which lies in the class of the sub-pattern supported on the recipe only.

// Unit magnitudes on one simple cycle.
Eigen::MatrixXd build_simple(const SignPattern& p, const SimpleCycle& gamma, double epsilon);

// Magnitude 10^p on the p-th part (parts ordered by minimum vertex).
Eigen::MatrixXd build_composite_powers(const SignPattern& p, const CompositeCycle& gamma,
                                       double epsilon);

// Embeds an already-built witness on the vertex set `inner_vertices` and
// appends the parts of `gamma` (disjoint from that set) with magnitudes M^p,
// M strictly above 1 and every |eigenvalue| of the inner matrix. Returns the
// matrix and the M used.
struct MScaledResult {
    Eigen::MatrixXd matrix;
    double m_scale;
};
MScaledResult build_mscaled(const SignPattern& p, const Eigen::MatrixXd& inner,
                            const std::vector<int>& inner_vertices, const CompositeCycle& gamma,
                            double epsilon, std::optional<double> m_scale = {});

// Opposite-signed equal-length composite cycles weighted t vs 1/t, shared
// parts weighted 1.
Eigen::MatrixXd build_interpolated(const SignPattern& p, const CompositeCycle& gamma1,
                                   const CompositeCycle& gamma2, double t, double epsilon);

// --- calibration -----------------------------------------------------------------
//
// Replaces "epsilon sufficiently small" with a checkable protocol: starting
// from 1e-3 times the smallest base magnitude, epsilon halves until (a) every
// simple nonzero eigenvalue of the base matrix is matched by exactly one
// eigenvalue of the perturbed matrix within a third of the base spectrum's
// minimum gap, and (b) the predicted frequency bound holds. Gives up after 48
// halvings with a CalibrationError carrying the last observed frequency.
WitnessMatrix calibrate(const SignPattern& p, WitnessRecipe recipe, FrequencyBound predicted);

// Base-spectrum real/nonreal counts of one part of a powers-style build: the
// nonzero eigenvalues of a weighted k-cycle are the k-th roots of
// (arc product) * (magnitude)^k.
int part_real_count(const SimpleCycle& part);
int part_complex_count(const SimpleCycle& part);

FrequencyBound bound_from_parts(const CompositeCycle& c, int structural_zeros);

}  // namespace spm

#endif
