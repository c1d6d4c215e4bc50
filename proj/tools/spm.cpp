// Command-line front end: analyze patterns for consistency, build calibrated
// witnesses, classify small tridiagonal patterns, and run the 2-consistency
// battery. Exit codes: 0 success, 2 parse/config error, 3 numerical or
// calibration failure, 4 census regression.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spm/consistency.hpp"
#include "spm/delta.hpp"
#include "spm/errors.hpp"
#include "spm/report.hpp"
#include "spm/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitRegression = 4;

struct CommonOptions {
    int samples = 500;
    std::uint64_t seed = spm::kDefaultSeed;
    int cap = 12;
    std::string format = "table";
    std::string checks;
    bool timing = false;

    spm::AnalysisBudget budget() const {
        spm::AnalysisBudget b;
        b.samples = samples;
        b.seed = seed;
        b.cap = cap;
        if (!checks.empty()) {
            std::istringstream in(checks);
            std::string id;
            while (std::getline(in, id, ',')) b.checks.push_back(id);
        }
        return b;
    }
    bool records() const { return format == "records"; }
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--samples", opt.samples, "members sampled per pattern")
        ->envname("SPM_SAMPLES");
    cmd->add_option("--seed", opt.seed, "sampling seed (fixed default for reproducibility)")
        ->envname("SPM_SEED");
    cmd->add_option("--cap", opt.cap, "enumeration size cap")->envname("SPM_CAP");
    cmd->add_option("--format", opt.format, "output format: table or records")
        ->check(CLI::IsMember({"table", "records"}))
        ->envname("SPM_FORMAT");
    cmd->add_option("--checks", opt.checks, "comma-separated check ids to run")
        ->envname("SPM_CHECKS");
    cmd->add_flag("--timing", opt.timing, "append per-pattern timing to the output");
}

std::string read_source(const std::string& name) {
    if (name == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(name);
    if (!in) throw spm::ParseError("cannot open input file '" + name + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<spm::SignPattern> gather_patterns(const std::vector<std::string>& files,
                                              const std::string& inline_text) {
    std::vector<spm::SignPattern> out;
    if (!inline_text.empty())
        for (auto& p : spm::parse_pattern_stream(inline_text)) out.push_back(p);
    for (const auto& f : files)
        for (auto& p : spm::parse_pattern_stream(read_source(f))) out.push_back(p);
    if (out.empty()) throw spm::ParseError("no input pattern given", 0, 0);
    return out;
}

void print_header(const CommonOptions& opt) {
    if (opt.records()) {
        nlohmann::json header{{"type", "header"},
                              {"seed", opt.seed},
                              {"samples", opt.samples},
                              {"cap", opt.cap}};
        std::cout << header.dump() << "\n";
    } else {
        std::cout << "# seed=" << opt.seed << " samples=" << opt.samples << " cap=" << opt.cap
                  << "\n";
    }
}

// Recipe syntax: "(1,2)(3,4,5)" with 1-based vertices.
std::vector<std::vector<int>> parse_cycle_lists(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::string digits;
    bool open = false;
    auto flush_digits = [&]() {
        if (digits.empty()) return;
        current.push_back(std::stoi(digits) - 1);
        digits.clear();
    };
    for (char c : text) {
        if (c == '(') {
            if (open) throw spm::ParseError("nested '(' in cycle list", 0, 0);
            open = true;
            current.clear();
        } else if (c == ')') {
            if (!open) throw spm::ParseError("unmatched ')' in cycle list", 0, 0);
            flush_digits();
            if (current.empty()) throw spm::ParseError("empty cycle in cycle list", 0, 0);
            out.push_back(current);
            open = false;
        } else if (c == ',' || c == ' ') {
            flush_digits();
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
        } else {
            throw spm::ParseError(std::string("unexpected character '") + c + "' in cycle list", 0,
                                  0);
        }
    }
    if (open) throw spm::ParseError("unterminated '(' in cycle list", 0, 0);
    if (out.empty()) throw spm::ParseError("empty cycle list", 0, 0);
    return out;
}

spm::SimpleCycle cycle_from_vertices(const spm::SignPattern& p, std::vector<int> vertices) {
    for (int v : vertices)
        if (v < 0 || v >= p.size())
            throw spm::ParseError("cycle vertex out of range", 0, 0);
    const int k = static_cast<int>(vertices.size());
    int product = 1;
    for (int i = 0; i < k; ++i) {
        spm::Sign s = p.at(vertices[i], vertices[(i + 1) % k]);
        if (s == spm::Sign::Zero)
            throw spm::ParseError("named cycle is not a cycle of the pattern's digraph", 0, 0);
        product *= spm::sign_value(s);
    }
    auto min_it = std::min_element(vertices.begin(), vertices.end());
    std::rotate(vertices.begin(), min_it, vertices.end());
    return spm::SimpleCycle{vertices, product, k % 2 == 0 ? -product : product};
}

int cmd_analyze(const CommonOptions& opt, const std::vector<std::string>& files,
                const std::string& inline_text) {
    auto patterns = gather_patterns(files, inline_text);
    print_header(opt);
    spm::AnalysisBudget budget = opt.budget();
    int worst = kExitOk;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        auto started = std::chrono::steady_clock::now();
        try {
            spm::Verdict v = spm::verdict(patterns[i], budget);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
            if (opt.records()) {
                nlohmann::json rec =
                    spm::analysis_record(static_cast<int>(i), patterns[i], v, budget);
                if (opt.timing) rec["timing_ms"] = ms;
                std::cout << rec.dump() << "\n";
            } else {
                spm::print_analysis_table(std::cout, static_cast<int>(i), patterns[i], v);
                if (opt.timing) std::cout << "  timing: " << ms << " ms\n";
            }
        } catch (const spm::NumericalError& e) {
            std::cerr << "numerical failure on pattern #" << i << ": " << e.what() << "\n";
            worst = kExitNumerical;
        }
    }
    return worst;
}

int cmd_delta(const CommonOptions& opt, const std::vector<std::string>& files,
              const std::string& inline_text) {
    auto patterns = gather_patterns(files, inline_text);
    print_header(opt);
    spm::AnalysisBudget budget = opt.budget();
    int worst = kExitOk;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        try {
            spm::DeltaReport r = spm::delta_verdict(patterns[i], budget);
            if (opt.records())
                std::cout << spm::delta_record(static_cast<int>(i), patterns[i], r, budget).dump()
                          << "\n";
            else
                spm::print_delta_table(std::cout, static_cast<int>(i), patterns[i], r);
        } catch (const spm::NumericalError& e) {
            std::cerr << "numerical failure on pattern #" << i << ": " << e.what() << "\n";
            worst = kExitNumerical;
        }
    }
    return worst;
}

int cmd_witness(const CommonOptions& opt, const std::vector<std::string>& files,
                const std::string& inline_text, const std::string& cycles_text,
                const std::string& kind_name) {
    auto patterns = gather_patterns(files, inline_text);
    if (patterns.size() != 1) throw spm::ParseError("witness construction takes one pattern", 0, 0);
    const spm::SignPattern& p = patterns[0];
    spm::CompositeCycle support;
    for (auto& vertices : parse_cycle_lists(cycles_text))
        support.parts.push_back(cycle_from_vertices(p, std::move(vertices)));

    spm::WitnessRecipe recipe;
    if (kind_name == "simple") {
        if (support.parts.size() != 1)
            throw spm::ParseError("kind=simple takes exactly one cycle", 0, 0);
        recipe.kind = spm::WitnessRecipe::Kind::SimpleCycleUnit;
    } else {
        recipe.kind = spm::WitnessRecipe::Kind::CompositePowers;
    }
    recipe.support = support;
    spm::FrequencyBound predicted = spm::bound_from_parts(support, 0);

    try {
        spm::WitnessMatrix w = spm::calibrate(p, recipe, predicted);
        nlohmann::json rec = spm::witness_record(p, w);
        if (opt.records()) {
            std::cout << rec.dump() << "\n";
        } else {
            std::cout << "recipe: " << w.recipe.describe() << "\n";
            std::cout << "predicted: " << w.predicted.to_string() << "\n";
            std::cout << "frequency: " << w.frequency.to_string() << "\n";
            std::cout << "matrix:\n";
            for (int i = 0; i < w.matrix.values.rows(); ++i) {
                std::cout << "  ";
                for (int j = 0; j < w.matrix.values.cols(); ++j) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.17g", w.matrix.values(i, j));
                    std::cout << buf << (j + 1 < w.matrix.values.cols() ? " " : "");
                }
                std::cout << "\n";
            }
            std::cout << "eigenvalues:\n";
            for (const auto& ev : w.eigenvalues)
                std::cout << "  " << ev.real() << (ev.imag() >= 0 ? "+" : "") << ev.imag()
                          << "i\n";
        }
        return kExitOk;
    } catch (const spm::CalibrationError& e) {
        std::cerr << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_classify(const CommonOptions& opt, int n, bool fixture_check) {
    spm::AnalysisBudget budget = opt.budget();
    auto rows = spm::classify_small_tridiagonal(n, budget);
    print_header(opt);
    if (opt.records()) {
        for (const auto& row : rows) {
            nlohmann::json rec{{"type", "census_row"},
                               {"n", n},
                               {"word", spm::word_string(row.word)},
                               {"verdict", spm::verdict_json(row.verdict)}};
            std::cout << rec.dump() << "\n";
        }
    } else {
        spm::print_census_table(std::cout, n, rows);
    }
    if (n <= 5 || fixture_check) {
        if (n > 5) {
            std::cout << "# no published census to check for n=" << n << "\n";
            return kExitOk;
        }
        if (auto mismatch = spm::verify_census_fixture(rows, n)) {
            std::cerr << "census regression: " << *mismatch << "\n";
            return kExitRegression;
        }
        std::cout << (opt.records() ? "" : "# census matches the published classification\n");
    }
    return kExitOk;
}

int cmd_equiv(const std::vector<std::string>& files, const std::string& inline_text) {
    auto patterns = gather_patterns(files, inline_text);
    if (patterns.size() != 2)
        throw spm::ParseError("equivalence test takes exactly two patterns", 0, 0);
    auto witness = spm::find_equivalence(patterns[0], patterns[1]);
    if (!witness) {
        std::cout << "not equivalent\n";
        return kExitOk;
    }
    std::cout << "equivalent:";
    std::cout << " sigma=(";
    for (std::size_t i = 0; i < witness->sigma.size(); ++i)
        std::cout << (i ? "," : "") << witness->sigma[i] + 1;
    std::cout << ") d=(";
    for (std::size_t i = 0; i < witness->d.size(); ++i)
        std::cout << (i ? "," : "") << (witness->d[i] > 0 ? "+" : "-");
    std::cout << ")" << (witness->negated ? " negated" : "")
              << (witness->transposed ? " transposed" : "") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sign pattern consistency toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::vector<std::string> files;
    std::string inline_text;
    std::string cycles_text;
    std::string kind_name = "powers";
    int census_n = 4;
    bool fixture_check = false;

    CLI::App* analyze = app.add_subcommand("analyze", "full consistency pipeline per pattern");
    analyze->add_option("inputs", files, "pattern files ('-' for stdin)");
    analyze->add_option("--inline", inline_text, "pattern text given directly");
    add_common(analyze, opt);

    CLI::App* witness = app.add_subcommand("witness", "build and calibrate one witness matrix");
    witness->add_option("inputs", files, "pattern file ('-' for stdin)");
    witness->add_option("--inline", inline_text, "pattern text given directly");
    witness->add_option("--cycles", cycles_text, "support cycles, e.g. \"(1,2)(3,4)\"")
        ->required();
    witness->add_option("--kind", kind_name, "simple | powers")
        ->check(CLI::IsMember({"simple", "powers"}));
    add_common(witness, opt);

    CLI::App* classify = app.add_subcommand("classify", "tridiagonal census for 2 <= n <= 6");
    classify->add_option("-n,--order", census_n, "pattern order")->required();
    classify->add_flag("--fixture-check", fixture_check,
                       "verify against the published classification (always on for n <= 5)");
    add_common(classify, opt);

    CLI::App* delta = app.add_subcommand("delta", "2-consistency battery per pattern");
    delta->add_option("inputs", files, "pattern files ('-' for stdin)");
    delta->add_option("--inline", inline_text, "pattern text given directly");
    add_common(delta, opt);

    CLI::App* equiv = app.add_subcommand("equiv", "brute-force equivalence test (n <= 6)");
    equiv->add_option("inputs", files, "two pattern files");
    equiv->add_option("--inline", inline_text, "pattern text (blank line between two patterns)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opt, files, inline_text);
        if (witness->parsed()) return cmd_witness(opt, files, inline_text, cycles_text, kind_name);
        if (classify->parsed()) return cmd_classify(opt, census_n, fixture_check);
        if (delta->parsed()) return cmd_delta(opt, files, inline_text);
        if (equiv->parsed()) return cmd_equiv(files, inline_text);
    } catch (const spm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const spm::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const spm::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
