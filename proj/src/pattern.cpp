#include "spm/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spm/errors.hpp"

namespace spm {

SignPattern::SignPattern(int n, std::vector<Sign> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("pattern order must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("entry grid does not match order");
}

SignPattern SignPattern::from_rows(std::initializer_list<std::string_view> rows) {
    std::string text;
    for (auto r : rows) {
        text.append(r);
        text.push_back('\n');
    }
    return parse_pattern(text);
}

int SignPattern::nonzero_count() const {
    int c = 0;
    for (Sign s : entries_)
        if (s != Sign::Zero) ++c;
    return c;
}

namespace {

std::string strip_comments(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_comment = false;
    for (char c : text) {
        if (c == '\n') {
            in_comment = false;
            out.push_back(c);
        } else if (in_comment) {
            continue;
        } else if (c == '#') {
            in_comment = true;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

// One parsed row: the signs plus the 1-based source column of each token
// (for error messages).
struct RawRow {
    std::vector<Sign> signs;
    int source_row = 0;
};

std::vector<RawRow> tokenize_rows(std::string_view text) {
    std::string clean = strip_comments(text);
    std::vector<RawRow> rows;
    RawRow current;
    int line = 1;
    int col = 0;
    bool row_has_content = false;
    auto flush_row = [&]() {
        if (row_has_content) {
            current.source_row = static_cast<int>(rows.size()) + 1;
            rows.push_back(current);
        }
        current.signs.clear();
        row_has_content = false;
    };
    for (char c : clean) {
        ++col;
        if (c == '\n' || c == ';') {
            flush_row();
            if (c == '\n') {
                ++line;
                col = 0;
            }
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') continue;
        Sign s;
        switch (c) {
            case '+': s = Sign::Plus; break;
            case '-': s = Sign::Minus; break;
            case '0': s = Sign::Zero; break;
            default: {
                std::ostringstream msg;
                msg << "illegal character '" << c << "' at line " << line << ", column " << col;
                throw ParseError(msg.str(), line, col);
            }
        }
        current.signs.push_back(s);
        row_has_content = true;
    }
    flush_row();
    return rows;
}

SignPattern pattern_from_rows(const std::vector<RawRow>& rows) {
    if (rows.empty()) throw ParseError("empty pattern", 1, 0);
    const int n = static_cast<int>(rows.size());
    for (const RawRow& r : rows) {
        if (static_cast<int>(r.signs.size()) != n) {
            std::ostringstream msg;
            msg << "pattern is not square: row " << r.source_row << " has " << r.signs.size()
                << " entries, expected " << n;
            throw ParseError(msg.str(), r.source_row, 0);
        }
    }
    std::vector<Sign> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (const RawRow& r : rows) entries.insert(entries.end(), r.signs.begin(), r.signs.end());
    return SignPattern(n, std::move(entries));
}

}  // namespace

SignPattern parse_pattern(std::string_view text) { return pattern_from_rows(tokenize_rows(text)); }

std::vector<SignPattern> parse_pattern_stream(std::string_view text) {
    std::string clean = strip_comments(text);
    std::vector<SignPattern> out;
    std::string block;
    std::string line;
    std::istringstream in(clean);
    auto flush = [&]() {
        bool blank = block.find_first_not_of(" \t\r\n;") == std::string::npos;
        if (!blank) out.push_back(parse_pattern(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) {
            flush();
        } else {
            block += line;
            block += '\n';
        }
    }
    flush();
    return out;
}

std::string render_pattern(const SignPattern& p) {
    std::string out;
    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.size(); ++j) {
            if (j) out.push_back(' ');
            out.push_back(sign_char(p.at(i, j)));
        }
        out.push_back('\n');
    }
    return out;
}

std::string render_pattern_inline(const SignPattern& p) {
    std::string out;
    for (int i = 0; i < p.size(); ++i) {
        if (i) out += "; ";
        for (int j = 0; j < p.size(); ++j) {
            if (j) out.push_back(' ');
            out.push_back(sign_char(p.at(i, j)));
        }
    }
    return out;
}

namespace {

void reach(const SignPattern& p, int start, bool transposed, std::vector<char>& seen) {
    std::vector<int> stack{start};
    seen.assign(p.size(), 0);
    seen[start] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < p.size(); ++v) {
            Sign s = transposed ? p.at(v, u) : p.at(u, v);
            if (s != Sign::Zero && !seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
}

}  // namespace

bool is_irreducible(const SignPattern& p) {
    if (p.size() == 1) return true;
    std::vector<char> seen;
    reach(p, 0, false, seen);
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    reach(p, 0, true, seen);
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

bool is_combinatorially_symmetric(const SignPattern& p) {
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if ((p.at(i, j) != Sign::Zero) != (p.at(j, i) != Sign::Zero)) return false;
    return true;
}

bool has_zero_diagonal(const SignPattern& p) {
    for (int i = 0; i < p.size(); ++i)
        if (p.at(i, i) != Sign::Zero) return false;
    return true;
}

namespace {

// Undirected degree sequence and connectivity of the support graph of a
// combinatorially symmetric 0-diagonal pattern.
struct UndirectedShape {
    std::vector<int> degree;
    int edge_count = 0;
    bool connected = false;
};

UndirectedShape undirected_shape(const SignPattern& p) {
    const int n = p.size();
    UndirectedShape shape;
    shape.degree.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (p.at(i, j) != Sign::Zero) {
                ++shape.degree[i];
                ++shape.degree[j];
                ++shape.edge_count;
            }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v)
            if (v != u && p.at(u, v) != Sign::Zero && !seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    shape.connected = (count == n);
    return shape;
}

bool is_tridiagonal_0diag(const SignPattern& p) {
    const int n = p.size();
    if (n < 2) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool off = (j == i + 1 || j == i - 1);
            if (off && p.at(i, j) == Sign::Zero) return false;
            if (!off && p.at(i, j) != Sign::Zero) return false;
        }
    return true;
}

}  // namespace

StructuralClass structural_class(const SignPattern& p) {
    if (is_tridiagonal_0diag(p)) return StructuralClass::Tridiagonal0Diag;
    if (!is_combinatorially_symmetric(p) || !has_zero_diagonal(p)) return StructuralClass::General;
    UndirectedShape shape = undirected_shape(p);
    if (!shape.connected) return StructuralClass::General;
    const int n = p.size();
    if (shape.edge_count == n - 1) return StructuralClass::Tree0Diag;
    if (shape.edge_count == n) {
        bool all_deg2 = std::all_of(shape.degree.begin(), shape.degree.end(),
                                    [](int d) { return d == 2; });
        if (all_deg2 && n >= 3) return StructuralClass::Cycle0Diag;
        return StructuralClass::Unicyclic0Diag;
    }
    return StructuralClass::General;
}

std::string structural_class_name(StructuralClass c) {
    switch (c) {
        case StructuralClass::Tridiagonal0Diag: return "tridiagonal-0diag";
        case StructuralClass::Tree0Diag: return "tree-0diag";
        case StructuralClass::Cycle0Diag: return "cycle-0diag";
        case StructuralClass::Unicyclic0Diag: return "unicyclic-0diag";
        case StructuralClass::General: return "general";
    }
    return "general";
}

namespace {

void check_permutation(const std::vector<int>& sigma, int n) {
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("permutation length does not match pattern order");
    std::vector<char> seen(n, 0);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

}  // namespace

SignPattern apply_equivalence(const SignPattern& p, const EquivalenceOp& op) {
    const int n = p.size();
    SignPattern out(n);
    if (const auto* perm = std::get_if<Permute>(&op)) {
        check_permutation(perm->sigma, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.set(perm->sigma[i], perm->sigma[j], p.at(i, j));
    } else if (const auto* sig = std::get_if<SignatureSimilarity>(&op)) {
        if (static_cast<int>(sig->d.size()) != n)
            throw std::invalid_argument("signature length does not match pattern order");
        for (int v : sig->d)
            if (v != 1 && v != -1) throw std::invalid_argument("signature entries must be +-1");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Sign s = p.at(i, j);
                out.set(i, j, sig->d[i] * sig->d[j] < 0 ? negate(s) : s);
            }
    } else if (std::holds_alternative<Negate>(op)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.set(i, j, negate(p.at(i, j)));
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.set(i, j, p.at(j, i));
    }
    return out;
}

std::vector<double> apply_equivalence_values(const std::vector<double>& values, int n,
                                             const EquivalenceOp& op) {
    if (values.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("value grid does not match order");
    std::vector<double> out(values.size(), 0.0);
    auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; };
    auto put = [&](int i, int j, double v) { out[static_cast<std::size_t>(i) * n + j] = v; };
    if (const auto* perm = std::get_if<Permute>(&op)) {
        check_permutation(perm->sigma, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(perm->sigma[i], perm->sigma[j], at(i, j));
    } else if (const auto* sig = std::get_if<SignatureSimilarity>(&op)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(i, j, sig->d[i] * sig->d[j] * at(i, j));
    } else if (std::holds_alternative<Negate>(op)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(i, j, -at(i, j));
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(i, j, at(j, i));
    }
    return out;
}

std::optional<EquivalenceWitness> find_equivalence(const SignPattern& a, const SignPattern& b) {
    if (a.size() != b.size()) return std::nullopt;
    const int n = a.size();
    if (n > 6) throw CapExceeded("brute-force equivalence test is limited to n <= 6");
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> d(n);
            for (int i = 0; i < n; ++i) d[i] = (mask >> i) & 1 ? -1 : 1;
            for (int neg = 0; neg < 2; ++neg)
                for (int tr = 0; tr < 2; ++tr) {
                    SignPattern q = apply_equivalence(a, Permute{sigma});
                    q = apply_equivalence(q, SignatureSimilarity{d});
                    if (neg) q = apply_equivalence(q, Negate{});
                    if (tr) q = apply_equivalence(q, Transpose{});
                    if (q == b)
                        return EquivalenceWitness{sigma, d, neg != 0, tr != 0};
                }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

SignPattern negate_tree_edges(const SignPattern& p) {
    StructuralClass cls = structural_class(p);
    if (cls != StructuralClass::Tree0Diag && cls != StructuralClass::Tridiagonal0Diag)
        throw std::invalid_argument("edge negation is defined for tree sign patterns with a 0-diagonal");
    SignPattern out = p;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < i; ++j)
            if (p.at(i, j) != Sign::Zero) out.set(i, j, negate(p.at(i, j)));
    return out;
}

SignPattern submatrix(const SignPattern& p, const std::vector<int>& rows,
                      const std::vector<int>& cols) {
    if (rows.empty() || cols.empty()) throw std::invalid_argument("empty index set");
    if (rows.size() != cols.size())
        throw std::invalid_argument("submatrix index sets must have equal size");
    for (int v : rows)
        if (v < 0 || v >= p.size()) throw std::out_of_range("row index out of range");
    for (int v : cols)
        if (v < 0 || v >= p.size()) throw std::out_of_range("column index out of range");
    const int k = static_cast<int>(rows.size());
    SignPattern out(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out.set(i, j, p.at(rows[i], cols[j]));
    return out;
}

std::vector<int> complement_indices(int n, const std::vector<int>& subset) {
    std::vector<char> in(n, 0);
    for (int v : subset) in[v] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

std::string singularity_class_name(SingularityClass c) {
    switch (c) {
        case SingularityClass::SignSingular: return "sign-singular";
        case SingularityClass::SignNonsingular: return "sign-nonsingular";
        case SingularityClass::AllowsSingularity: return "allows-singularity";
    }
    return "";
}

namespace {

// Backtracking over permutations supported on the nonzero entries. Tracks the
// permutation sign incrementally; stops as soon as terms of both signs have
// been seen.
struct TransversalScan {
    const SignPattern& p;
    int n;
    std::vector<int> col_of_row;
    std::vector<char> col_used;
    bool saw_plus = false;
    bool saw_minus = false;

    explicit TransversalScan(const SignPattern& pattern)
        : p(pattern), n(pattern.size()), col_of_row(n, -1), col_used(n, 0) {}

    // sign_acc carries sgn(entries so far); parity flips contribute later via
    // cycle decomposition, handled by counting transpositions of the partial
    // assignment at the end of each full term.
    void run(int row, int entry_sign_acc) {
        if (saw_plus && saw_minus) return;
        if (row == n) {
            int term = entry_sign_acc * permutation_sign();
            (term > 0 ? saw_plus : saw_minus) = true;
            return;
        }
        for (int c = 0; c < n; ++c) {
            if (col_used[c] || p.at(row, c) == Sign::Zero) continue;
            col_used[c] = 1;
            col_of_row[row] = c;
            run(row + 1, entry_sign_acc * sign_value(p.at(row, c)));
            col_used[c] = 0;
            col_of_row[row] = -1;
            if (saw_plus && saw_minus) return;
        }
    }

    int permutation_sign() const {
        std::vector<char> visited(n, 0);
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            if (visited[i]) continue;
            int len = 0;
            for (int j = i; !visited[j]; j = col_of_row[j]) {
                visited[j] = 1;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        return sign;
    }
};

}  // namespace

SingularityClass singularity_class(const SignPattern& p, int cap) {
    if (p.size() > cap) {
        std::ostringstream msg;
        msg << "singularity classification not computed: n=" << p.size() << " exceeds cap "
            << cap;
        throw CapExceeded(msg.str());
    }
    TransversalScan scan(p);
    scan.run(0, 1);
    if (scan.saw_plus && scan.saw_minus) return SingularityClass::AllowsSingularity;
    if (scan.saw_plus || scan.saw_minus) return SingularityClass::SignNonsingular;
    return SingularityClass::SignSingular;
}

EdgeWord tridiagonal_edge_word(const SignPattern& p) {
    if (!is_tridiagonal_0diag(p))
        throw std::invalid_argument("edge word is defined for tridiagonal patterns with a 0-diagonal");
    EdgeWord w;
    for (int i = 0; i + 1 < p.size(); ++i) w.push_back(multiply(p.at(i, i + 1), p.at(i + 1, i)));
    return w;
}

EdgeWord canonical_word(EdgeWord w) {
    EdgeWord rev(w.rbegin(), w.rend());
    return std::min(w, rev);  // Sign order Zero < Plus < Minus
}

EdgeWord tridiagonal_canonical_form(const SignPattern& p) {
    return canonical_word(tridiagonal_edge_word(p));
}

std::string word_string(const EdgeWord& w) {
    std::string s;
    for (Sign x : w) s.push_back(sign_char(x));
    return s;
}

SignPattern pattern_from_word(const EdgeWord& w) {
    const int n = static_cast<int>(w.size()) + 1;
    SignPattern p(n);
    for (int i = 0; i + 1 < n; ++i) {
        p.set(i, i + 1, w[i]);
        p.set(i + 1, i, Sign::Plus);
    }
    return p;
}

}  // namespace spm
