#include "spm/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spm/errors.hpp"

namespace spm {

std::string FrequencyBound::to_string() const {
    std::ostringstream s;
    s << "i_r>=" << min_real << ", i_c>=" << min_complex;
    return s.str();
}

std::string recipe_kind_name(WitnessRecipe::Kind k) {
    switch (k) {
        case WitnessRecipe::Kind::SimpleCycleUnit: return "simple-cycle";
        case WitnessRecipe::Kind::CompositePowers: return "composite-powers";
        case WitnessRecipe::Kind::MScaled: return "m-scaled";
        case WitnessRecipe::Kind::Interpolated: return "interpolated";
    }
    return "";
}

std::string WitnessRecipe::describe() const {
    std::ostringstream s;
    s << recipe_kind_name(kind) << " " << support.to_string();
    if (kind == Kind::Interpolated) s << " vs " << secondary.to_string() << " t=" << t;
    if (kind == Kind::MScaled) s << " M=" << m_scale;
    s << " eps=" << epsilon;
    return s.str();
}

namespace {

void require_cycle_of(const SignPattern& p, const SimpleCycle& c) {
    const int k = c.length();
    for (int i = 0; i < k; ++i) {
        int from = c.vertices[i], to = c.vertices[(i + 1) % k];
        if (from < 0 || from >= p.size() || to < 0 || to >= p.size() ||
            p.at(from, to) == Sign::Zero)
            throw std::invalid_argument("cycle " + cycle_to_string(c) +
                                        " is not a cycle of the pattern's digraph");
    }
}

void require_disjoint_parts(const CompositeCycle& c) {
    std::uint64_t seen = 0;
    for (const auto& part : c.parts) {
        std::uint64_t m = 0;
        for (int v : part.vertices) m |= std::uint64_t{1} << v;
        if (m & seen) throw std::invalid_argument("composite cycle parts are not vertex disjoint");
        seen |= m;
    }
}

CompositeCycle sorted_parts(CompositeCycle c) {
    std::sort(c.parts.begin(), c.parts.end(), [](const SimpleCycle& a, const SimpleCycle& b) {
        return a.vertices < b.vertices;
    });
    return c;
}

// Fills every supported entry not already set with epsilon times the
// pattern's sign.
void fill_epsilon(const SignPattern& p, const std::vector<char>& placed, double epsilon,
                  Eigen::MatrixXd& m) {
    const int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (p.at(i, j) != Sign::Zero && !placed[static_cast<std::size_t>(i) * n + j])
                m(i, j) = epsilon * sign_value(p.at(i, j));
}

Eigen::MatrixXd build_weighted(const SignPattern& p, const CompositeCycle& gamma,
                               const std::vector<double>& part_magnitude, double epsilon) {
    const int n = p.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<char> placed(static_cast<std::size_t>(n) * n, 0);
    for (std::size_t pi = 0; pi < gamma.parts.size(); ++pi) {
        const SimpleCycle& part = gamma.parts[pi];
        const int k = part.length();
        for (int i = 0; i < k; ++i) {
            int from = part.vertices[i], to = part.vertices[(i + 1) % k];
            m(from, to) = part_magnitude[pi] * sign_value(p.at(from, to));
            placed[static_cast<std::size_t>(from) * n + to] = 1;
        }
    }
    fill_epsilon(p, placed, epsilon, m);
    return m;
}

}  // namespace

Eigen::MatrixXd build_simple(const SignPattern& p, const SimpleCycle& gamma, double epsilon) {
    if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
    require_cycle_of(p, gamma);
    CompositeCycle c{{gamma}};
    return build_weighted(p, c, {1.0}, epsilon);
}

Eigen::MatrixXd build_composite_powers(const SignPattern& p, const CompositeCycle& gamma,
                                       double epsilon) {
    if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
    CompositeCycle c = sorted_parts(gamma);
    require_disjoint_parts(c);
    for (const auto& part : c.parts) require_cycle_of(p, part);
    std::vector<double> mags;
    for (std::size_t pi = 0; pi < c.parts.size(); ++pi) mags.push_back(std::pow(10.0, pi + 1.0));
    return build_weighted(p, c, mags, epsilon);
}

MScaledResult build_mscaled(const SignPattern& p, const Eigen::MatrixXd& inner,
                            const std::vector<int>& inner_vertices, const CompositeCycle& gamma,
                            double epsilon, std::optional<double> m_scale) {
    const int n = p.size();
    const int k = static_cast<int>(inner_vertices.size());
    if (inner.rows() != k || inner.cols() != k)
        throw std::invalid_argument("inner matrix does not match its vertex set");
    CompositeCycle c = sorted_parts(gamma);
    require_disjoint_parts(c);
    std::uint64_t inner_mask = 0;
    for (int v : inner_vertices) inner_mask |= std::uint64_t{1} << v;
    if (c.vertex_mask() & inner_mask)
        throw std::invalid_argument("appended cycles overlap the embedded vertex set");
    for (const auto& part : c.parts) require_cycle_of(p, part);

    double m_val;
    if (m_scale) {
        m_val = *m_scale;
    } else {
        double max_abs = 0.0;
        if (k > 0)
            for (const auto& ev : eigen_frequency(inner).eigenvalues)
                max_abs = std::max(max_abs, std::abs(ev));
        m_val = 2.0 * (1.0 + max_abs);
    }
    if (m_val <= 1.0) throw std::invalid_argument("M must exceed 1");

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<char> placed(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (inner(i, j) != 0.0) {
                m(inner_vertices[i], inner_vertices[j]) = inner(i, j);
                placed[static_cast<std::size_t>(inner_vertices[i]) * n + inner_vertices[j]] = 1;
            }
    for (std::size_t pi = 0; pi < c.parts.size(); ++pi) {
        const SimpleCycle& part = c.parts[pi];
        const int len = part.length();
        double mag = std::pow(m_val, pi + 1.0);
        for (int i = 0; i < len; ++i) {
            int from = part.vertices[i], to = part.vertices[(i + 1) % len];
            m(from, to) = mag * sign_value(p.at(from, to));
            placed[static_cast<std::size_t>(from) * n + to] = 1;
        }
    }
    fill_epsilon(p, placed, epsilon, m);
    return {m, m_val};
}

namespace {

bool same_part(const SimpleCycle& a, const SimpleCycle& b) { return a.vertices == b.vertices; }

bool contains_part(const CompositeCycle& c, const SimpleCycle& part) {
    for (const auto& q : c.parts)
        if (same_part(q, part)) return true;
    return false;
}

}  // namespace

Eigen::MatrixXd build_interpolated(const SignPattern& p, const CompositeCycle& gamma1,
                                   const CompositeCycle& gamma2, double t, double epsilon) {
    if (t <= 0) throw std::invalid_argument("t must be > 0");
    if (gamma1.length() != gamma2.length())
        throw std::invalid_argument("interpolated cycles must have equal length");
    if (gamma1.sign() == gamma2.sign())
        throw std::invalid_argument("interpolated cycles must have opposite signs");
    CompositeCycle c1 = sorted_parts(gamma1), c2 = sorted_parts(gamma2);
    require_disjoint_parts(c1);
    require_disjoint_parts(c2);
    for (const auto& part : c1.parts) require_cycle_of(p, part);
    for (const auto& part : c2.parts) require_cycle_of(p, part);

    const int n = p.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<char> placed(static_cast<std::size_t>(n) * n, 0);
    auto place = [&](const SimpleCycle& part, double mag) {
        const int k = part.length();
        for (int i = 0; i < k; ++i) {
            int from = part.vertices[i], to = part.vertices[(i + 1) % k];
            m(from, to) = mag * sign_value(p.at(from, to));
            placed[static_cast<std::size_t>(from) * n + to] = 1;
        }
    };
    for (const auto& part : c1.parts) place(part, contains_part(c2, part) ? 1.0 : t);
    for (const auto& part : c2.parts)
        if (!contains_part(c1, part)) place(part, 1.0 / t);
    fill_epsilon(p, placed, epsilon, m);
    return m;
}

int part_real_count(const SimpleCycle& part) {
    if (part.product_sign > 0) return part.length() % 2 ? 1 : 2;
    return part.length() % 2 ? 1 : 0;
}

int part_complex_count(const SimpleCycle& part) { return part.length() - part_real_count(part); }

FrequencyBound bound_from_parts(const CompositeCycle& c, int structural_zeros) {
    FrequencyBound b;
    b.min_real = structural_zeros;
    for (const auto& part : c.parts) {
        b.min_real += part_real_count(part);
        b.min_complex += part_complex_count(part);
    }
    return b;
}

namespace {

Eigen::MatrixXd build_for_recipe(const SignPattern& p, const WitnessRecipe& r, double epsilon) {
    switch (r.kind) {
        case WitnessRecipe::Kind::SimpleCycleUnit:
            return build_simple(p, r.support.parts.at(0), epsilon);
        case WitnessRecipe::Kind::CompositePowers:
            return build_composite_powers(p, r.support, epsilon);
        case WitnessRecipe::Kind::Interpolated:
            return build_interpolated(p, r.support, r.secondary, r.t, epsilon);
        case WitnessRecipe::Kind::MScaled:
            throw std::invalid_argument("m-scaled witnesses are calibrated via build_mscaled");
    }
    throw std::invalid_argument("unknown recipe kind");
}

}  // namespace

WitnessMatrix calibrate(const SignPattern& p, WitnessRecipe recipe, FrequencyBound predicted) {
    Eigen::MatrixXd base = build_for_recipe(p, recipe, 0.0);
    Spectrum base_spec = eigen_frequency(base);

    const double zero_tol = 1e-9 * (1.0 + base.norm());
    std::vector<std::complex<double>> anchors;  // distinct spectral points, zero collapsed
    bool has_zero = false;
    for (const auto& ev : base_spec.eigenvalues) {
        if (std::abs(ev) <= zero_tol)
            has_zero = true;
        else
            anchors.push_back(ev);
    }
    std::vector<std::complex<double>> points = anchors;
    if (has_zero) points.push_back({0.0, 0.0});
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            gap = std::min(gap, std::abs(points[i] - points[j]));
    if (!anchors.empty() && !(gap > 0))
        throw NumericalError("base witness spectrum has a repeated nonzero eigenvalue");
    const double radius = points.size() > 1 ? gap / 3.0 : std::numeric_limits<double>::infinity();

    double min_mag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < base.rows(); ++i)
        for (int j = 0; j < base.cols(); ++j)
            if (base(i, j) != 0.0) min_mag = std::min(min_mag, std::abs(base(i, j)));
    if (!std::isfinite(min_mag)) min_mag = 1.0;

    double eps = 1e-3 * min_mag;
    EigenFrequency last{};
    for (int attempt = 0; attempt <= 48; ++attempt, eps *= 0.5) {
        Eigen::MatrixXd m = build_for_recipe(p, recipe, eps);
        Spectrum spec = eigen_frequency(m);
        last = spec.frequency;
        bool matched = true;
        for (const auto& anchor : anchors) {
            int hits = 0;
            for (const auto& ev : spec.eigenvalues)
                if (std::abs(ev - anchor) <= radius) ++hits;
            if (hits != 1) {
                matched = false;
                break;
            }
        }
        if (!matched || !predicted.satisfied(spec.frequency)) continue;
        recipe.epsilon = eps;
        WitnessMatrix w{std::move(recipe), QMatrix(p, m), spec.frequency, spec.eigenvalues,
                        predicted, true};
        return w;
    }
    std::ostringstream msg;
    msg << "calibration failed for " << recipe.describe() << ": predicted "
        << predicted.to_string() << ", last observed " << last.to_string();
    throw CalibrationError(msg.str(), last);
}

}  // namespace spm
