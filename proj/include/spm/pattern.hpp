#ifndef SPM_PATTERN_HPP
#define SPM_PATTERN_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spm/sign.hpp"

namespace spm {

// An n x n grid over {+, -, 0}. Immutable after construction; all operations
// on patterns are pure functions, so values can be shared freely across
// threads.
class SignPattern {
public:
    explicit SignPattern(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, Sign::Zero) {}
    SignPattern(int n, std::vector<Sign> entries);
    // Row-major construction from readable literals, one string per row,
    // e.g. SignPattern::from_rows({"0 + 0", "+ 0 -", "0 + 0"}).
    static SignPattern from_rows(std::initializer_list<std::string_view> rows);

    int size() const { return n_; }
    Sign at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    void set(int i, int j, Sign s) { entries_[static_cast<std::size_t>(i) * n_ + j] = s; }

    bool operator==(const SignPattern& other) const = default;

    int nonzero_count() const;

private:
    int n_;
    std::vector<Sign> entries_;
};

// --- text format -----------------------------------------------------------
//
// Rows are separated by ';' or newline, entries by whitespace, tokens are
// '+', '-', '0'. '#' starts a comment running to end of line. The canonical
// rendering is one row per line with single-space separators.

SignPattern parse_pattern(std::string_view text);

// Splits the input on blank lines (after comment stripping) and parses each
// block as one pattern. Used by file/stdin inputs of the CLI.
std::vector<SignPattern> parse_pattern_stream(std::string_view text);

std::string render_pattern(const SignPattern& p);

// Single-line rendering with ';' row separators, for report records.
std::string render_pattern_inline(const SignPattern& p);

// --- structural predicates --------------------------------------------------

// True iff the digraph of nonzero entries is strongly connected. A 1x1
// pattern counts as irreducible by convention (needed by recursions, with or
// without a loop).
bool is_irreducible(const SignPattern& p);

bool is_combinatorially_symmetric(const SignPattern& p);

bool has_zero_diagonal(const SignPattern& p);

enum class StructuralClass {
    Tridiagonal0Diag,  // nonzero super/sub-diagonal, all other entries zero
    Tree0Diag,
    Cycle0Diag,
    Unicyclic0Diag,
    General,
};

// Most specific class that applies. Tree/Cycle/Unicyclic refer to the
// underlying undirected graph of a combinatorially symmetric 0-diagonal
// pattern.
StructuralClass structural_class(const SignPattern& p);

std::string structural_class_name(StructuralClass c);

// --- equivalence transformations ---------------------------------------------

struct Permute {
    std::vector<int> sigma;  // 0-based; entry (i,j) moves to (sigma[i], sigma[j])
};
struct SignatureSimilarity {
    std::vector<int> d;  // entries +-1; entry (i,j) multiplied by d[i]*d[j]
};
struct Negate {};
struct Transpose {};

using EquivalenceOp = std::variant<Permute, SignatureSimilarity, Negate, Transpose>;

SignPattern apply_equivalence(const SignPattern& p, const EquivalenceOp& op);

// Applies the same op to a real matrix (values given row-major) so that class
// membership can be tracked alongside the pattern transformation.
std::vector<double> apply_equivalence_values(const std::vector<double>& values, int n,
                                             const EquivalenceOp& op);

// Brute-force equivalence test over the full group generated by permutation
// similarity, signature similarity, negation and transposition. Exponential;
// intended for n <= 6.
struct EquivalenceWitness {
    std::vector<int> sigma;
    std::vector<int> d;
    bool negated = false;
    bool transposed = false;
};
std::optional<EquivalenceWitness> find_equivalence(const SignPattern& a, const SignPattern& b);

// --- tree edge negation -------------------------------------------------------
//
// For a tree sign pattern with a 0-diagonal, returns the companion pattern in
// which every undirected edge sign is flipped. Exactly one of the two directed
// entries per edge is flipped, namely the (i,j) entry with i > j, so the edge
// product reverses while the support stays put.
SignPattern negate_tree_edges(const SignPattern& p);

// --- submatrices ----------------------------------------------------------------

// Rows/cols are 0-based index sets; principal when rows == cols.
SignPattern submatrix(const SignPattern& p, const std::vector<int>& rows,
                      const std::vector<int>& cols);

std::vector<int> complement_indices(int n, const std::vector<int>& subset);

// --- sign singularity ------------------------------------------------------------

enum class SingularityClass { SignSingular, SignNonsingular, AllowsSingularity };

std::string singularity_class_name(SingularityClass c);

// Classifies the pattern by the signs of the nonzero terms in the standard
// determinant expansion, enumerated by backtracking on the nonzero support.
// Exponential in the worst case; refuses (CapExceeded) above the cap.
SingularityClass singularity_class(const SignPattern& p, int cap = 12);

// --- tridiagonal canonical form -----------------------------------------------------

using EdgeWord = std::vector<Sign>;  // undirected edge signs along a path, over {+,-}

// Word of undirected edge signs of a Tridiagonal0Diag pattern: w[i] =
// sgn(p(i,i+1) * p(i+1,i)). Throws std::invalid_argument otherwise.
EdgeWord tridiagonal_edge_word(const SignPattern& p);

// Lexicographically smaller of (w, reverse(w)) under Zero < Plus < Minus.
// Two tridiagonal 0-diagonal patterns with equal canonical words are
// equivalent.
EdgeWord tridiagonal_canonical_form(const SignPattern& p);

EdgeWord canonical_word(EdgeWord w);

std::string word_string(const EdgeWord& w);

// Canonical tridiagonal pattern realizing a word: subdiagonal all '+',
// superdiagonal carrying the word.
SignPattern pattern_from_word(const EdgeWord& w);

}  // namespace spm

#endif
