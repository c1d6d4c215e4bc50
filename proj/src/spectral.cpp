#include "spm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spm/errors.hpp"
#include "spm/graphs.hpp"

namespace spm {

std::string EigenFrequency::to_string() const {
    std::ostringstream s;
    s << "(" << real_count << "," << complex_count << ")";
    return s.str();
}

std::string Inertia::to_string() const {
    std::ostringstream s;
    s << "(" << plus << "," << minus << "," << zero << ")";
    return s.str();
}

Spectrum eigen_frequency(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n < 1 || m.cols() != n) throw std::invalid_argument("matrix must be square, n >= 1");
    if (!m.allFinite()) throw std::invalid_argument("matrix entries must be finite");

    Spectrum result;
    if (n == 1) {
        result.eigenvalues.push_back({m(0, 0), 0.0});
        result.frequency = {1, 0};
        return result;
    }

    Eigen::RealSchur<Eigen::MatrixXd> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw NumericalError("real Schur iteration did not converge");
    const Eigen::MatrixXd& t = schur.matrixT();

    const double scale = 1.0 + m.norm();
    const double borderline_tol = 1e-12 * scale * scale;

    int i = 0;
    while (i < n) {
        if (i == n - 1 || t(i + 1, i) == 0.0) {
            result.eigenvalues.push_back({t(i, i), 0.0});
            ++result.frequency.real_count;
            ++i;
        } else {
            const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
            const double disc = (a - d) * (a - d) + 4.0 * b * c;
            if (std::abs(disc) <= borderline_tol) result.borderline = true;
            if (disc < 0.0) {
                const double re = 0.5 * (a + d);
                const double im = 0.5 * std::sqrt(-disc);
                result.eigenvalues.push_back({re, im});
                result.eigenvalues.push_back({re, -im});
                result.frequency.complex_count += 2;
            } else {
                // The Schur form normally splits such blocks; kept for safety.
                const double root = std::sqrt(disc);
                result.eigenvalues.push_back({0.5 * (a + d + root), 0.0});
                result.eigenvalues.push_back({0.5 * (a + d - root), 0.0});
                result.frequency.real_count += 2;
                result.borderline = true;
            }
            i += 2;
        }
    }
    return result;
}

Inertia inertia(const Eigen::MatrixXd& m, double zero_tol) {
    Spectrum s = eigen_frequency(m);
    const double tol = zero_tol * (1.0 + m.norm());
    Inertia in;
    for (const auto& ev : s.eigenvalues) {
        if (std::abs(ev.real()) <= tol)
            ++in.zero;
        else if (ev.real() > 0)
            ++in.plus;
        else
            ++in.minus;
    }
    return in;
}

std::vector<double> char_poly_coeffs_traces(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> p(n + 1, 0.0);  // power sums p[k] = tr(m^k)
    Eigen::MatrixXd mk = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        mk = mk * m;
        p[k] = mk.trace();
    }
    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        int s = 1;
        for (int i = 1; i <= k; ++i) {
            acc += s * e[k - i] * p[i];
            s = -s;
        }
        e[k] = acc / k;
    }
    return {e.begin() + 1, e.end()};
}

std::vector<double> char_poly_coeffs_minors(const Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    if (n > 20) throw CapExceeded("principal-minor path limited to n <= 20");
    std::vector<double> e(n, 0.0);
    std::vector<int> idx;
    // Iterate subsets via combinations per size k.
    for (int k = 1; k <= n; ++k) {
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        double sum = 0.0;
        while (true) {
            Eigen::MatrixXd sub(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
            sum += k == 1 ? sub(0, 0) : sub.partialPivLu().determinant();
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == n - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
        e[k - 1] = sum;
    }
    return e;
}

std::vector<double> char_poly_coeffs(const Eigen::MatrixXd& m, int minors_check_limit) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> traces = char_poly_coeffs_traces(m);
    if (n > minors_check_limit) return traces;
    std::vector<double> minors = char_poly_coeffs_minors(m);
    const double s = m.norm();
    double floor = 1.0;
    for (int k = 1; k <= n; ++k) {
        floor *= std::max(1.0, s);
        const double a = minors[k - 1], b = traces[k - 1];
        const double tol = 1e-8 * std::max({std::abs(a), std::abs(b), 1e-8 * floor});
        if (std::abs(a - b) > tol) {
            std::ostringstream msg;
            msg << "characteristic polynomial self-check failed at E_" << k << ": minors=" << a
                << " traces=" << b;
            throw NumericalError(msg.str());
        }
    }
    return minors;
}

char coeff_status_char(CoeffStatus s) {
    switch (s) {
        case CoeffStatus::Zero: return '0';
        case CoeffStatus::Plus: return '+';
        case CoeffStatus::Minus: return '-';
        case CoeffStatus::Indeterminate: return '*';
    }
    return '?';
}

std::string CoeffSignVector::to_string() const {
    std::string s;
    for (CoeffStatus c : status) s.push_back(coeff_status_char(c));
    return s;
}

CoeffSignVector coeff_sign_vector(const SignPattern& p, int cap) {
    const int n = p.size();
    CoeffSignVector v;
    v.status.assign(n, CoeffStatus::Zero);
    SignedDigraph d(p);
    std::vector<char> saw_plus(n + 1, 0), saw_minus(n + 1, 0);
    enumerate_composite_cycles(d, std::nullopt, cap, [&](const CompositeCycle& c) {
        int len = c.length();
        (c.sign() > 0 ? saw_plus : saw_minus)[len] = 1;
        return true;
    });
    for (int k = 1; k <= n; ++k) {
        if (saw_plus[k] && saw_minus[k])
            v.status[k - 1] = CoeffStatus::Indeterminate;
        else if (saw_plus[k])
            v.status[k - 1] = CoeffStatus::Plus;
        else if (saw_minus[k])
            v.status[k - 1] = CoeffStatus::Minus;
    }
    return v;
}

std::string DescartesResult::to_string() const {
    std::ostringstream s;
    if (exact) {
        s << "exactly " << real_count << " real";
        if (positive >= 0) s << " (pos=" << positive << ", neg=" << negative << ", zero=" << zero << ")";
    } else {
        s << "between " << min_real << " and " << max_real << " real";
    }
    return s.str();
}

namespace {

int sign_changes(const std::vector<int>& seq) {
    int changes = 0;
    int prev = 0;
    for (int s : seq) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

DescartesResult forced_real_root_count(const CoeffSignVector& v, int n) {
    std::vector<int> indet;  // indices k-1 with Indeterminate status
    for (int k = 0; k < n; ++k)
        if (v.status[k] == CoeffStatus::Indeterminate) indet.push_back(k);
    if (indet.size() > 14)
        throw CapExceeded("too many indeterminate coefficients for exhaustive resolution");

    DescartesResult result;
    bool first = true;
    bool all_pinned = true;
    bool totals_equal = true;
    bool pos_uniform = true, neg_uniform = true, zero_uniform = true;
    int common_total = -1, common_pos = -1, common_neg = -1, common_zero = -1;
    int min_real = 1 << 20, max_real = 0;

    std::vector<int> coeff(n + 1, 0);  // coeff[j] = sign of the x^j coefficient
    long resolutions = 1;
    for (std::size_t i = 0; i < indet.size(); ++i) resolutions *= 3;

    for (long r = 0; r < resolutions; ++r) {
        // Resolve each Indeterminate E_k to one of {+,-,0}.
        std::vector<int> ek(n, 0);
        for (int k = 0; k < n; ++k) {
            switch (v.status[k]) {
                case CoeffStatus::Plus: ek[k] = 1; break;
                case CoeffStatus::Minus: ek[k] = -1; break;
                default: ek[k] = 0; break;
            }
        }
        long rem = r;
        for (int idx : indet) {
            ek[idx] = static_cast<int>(rem % 3) - 1;  // -1, 0, +1
            rem /= 3;
        }
        // Ch(x) = x^n - E_1 x^(n-1) + ... : coefficient of x^(n-k) is (-1)^k E_k.
        coeff[n] = 1;
        for (int k = 1; k <= n; ++k) coeff[n - k] = (k % 2 ? -1 : 1) * ek[k - 1];

        std::vector<int> seq_pos, seq_neg;
        for (int j = n; j >= 0; --j) {
            seq_pos.push_back(coeff[j]);
            seq_neg.push_back(j % 2 ? -coeff[j] : coeff[j]);
        }
        int vp = sign_changes(seq_pos);
        int vn = sign_changes(seq_neg);
        int z = 0;
        for (int j = 0; j <= n; ++j)
            if (coeff[j] != 0) {
                z = j;
                break;
            }
        bool pinned = vp <= 1 && vn <= 1;
        int total_max = vp + vn + z;
        int total_min = (vp <= 1 ? vp : vp % 2) + (vn <= 1 ? vn : vn % 2) + z;
        min_real = std::min(min_real, total_min);
        max_real = std::max(max_real, total_max);
        if (!pinned) all_pinned = false;
        if (first) {
            common_total = total_max;
            common_pos = vp;
            common_neg = vn;
            common_zero = z;
            first = false;
        } else {
            if (total_max != common_total) totals_equal = false;
            if (vp != common_pos) pos_uniform = false;
            if (vn != common_neg) neg_uniform = false;
            if (z != common_zero) zero_uniform = false;
        }
    }

    result.exact = all_pinned && totals_equal;
    result.real_count = result.exact ? common_total : -1;
    if (result.exact) {
        result.positive = pos_uniform ? common_pos : -1;
        result.negative = neg_uniform ? common_neg : -1;
        result.zero = zero_uniform ? common_zero : -1;
    }
    result.min_real = min_real;
    result.max_real = max_real;
    return result;
}

Eigen::MatrixXd matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

bool sign_compatible(const SignPattern& p, const Eigen::MatrixXd& m) {
    if (m.rows() != p.size() || m.cols() != p.size()) return false;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (sign_of_double(m(i, j)) != p.at(i, j)) return false;
    return true;
}

QMatrix::QMatrix(SignPattern p, Eigen::MatrixXd v) : pattern(std::move(p)), values(std::move(v)) {
    if (!sign_compatible(pattern, values))
        throw std::invalid_argument("matrix is not a member of the pattern's qualitative class");
}

}  // namespace spm
