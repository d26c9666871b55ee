#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gfkit/algdep.hpp"
#include "gfkit/errors.hpp"
#include "gfkit/euler.hpp"
#include "gfkit/expression.hpp"
#include "gfkit/fit.hpp"
#include "gfkit/format.hpp"
#include "gfkit/holonomic.hpp"
#include "gfkit/hypergeom.hpp"
#include "gfkit/lookup.hpp"
#include "gfkit/parse.hpp"
#include "gfkit/series.hpp"

/**
 * Discovery pipeline: run every enabled guessing method on an integer
 * sequence, keep only candidates whose re-expansion reproduces the input,
 * and collect canonical result strings plus per-method diagnostics.
 */

namespace gfkit {

/** One verified candidate produced by a pipeline stage. */
struct GuessResult {
    std::string method;      ///< rational | transform | precurrence | hypergeometric | algebraic | euler | lookup
    std::string expression;  ///< canonical rendering of the candidate
    std::size_t verified_through = 0;  ///< leading terms reproduced exactly
    std::string details;     ///< short human-readable note (degrees, order, ...)

    bool operator==(const GuessResult&) const = default;
};

/** Knobs shared by the pipeline and the command-line front end. */
struct FitOptions {
    std::vector<std::string> methods;  ///< empty selects every method
    long dmax = 4;                     ///< recurrence coefficient degree bound
    long kmax = 5;                     ///< recurrence order bound
    unsigned long precision = 118;     ///< working digits for the numeric stage
    long base_point = 100;             ///< denominator of the smallest sample point
    long points = 12;                  ///< number of sample points
    long extend = 200;                 ///< series length used for numeric evaluation
    bool first_only = false;           ///< stop at the first verified candidate
    const SequenceDB* db = nullptr;    ///< optional database for the lookup stage
};

/** Everything a pipeline run produced. */
struct FitOutcome {
    std::vector<GuessResult> results;
    std::vector<std::string> diagnostics;  ///< one line per skipped/failed stage

    bool found() const { return !results.empty(); }
};

/** Stage tags in execution order; also the vocabulary of --methods. */
inline const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names = {
        "rational", "transform", "precurrence", "hypergeometric",
        "algebraic", "euler",    "lookup"};
    return names;
}

namespace detail {

inline bool method_enabled(const FitOptions& opt, const std::string& name) {
    if (opt.methods.empty()) return true;
    return std::find(opt.methods.begin(), opt.methods.end(), name) != opt.methods.end();
}

inline std::string gate_word(bool ok) { return ok ? "ok" : "fail"; }

/** Render a database match: "A000108 via add_const_1, partial_sums (offset 1)". */
inline std::string format_match(const MatchResult& m) {
    std::string out = m.id;
    if (!m.chain.empty()) {
        out += " via ";
        for (std::size_t i = 0; i < m.chain.size(); ++i) {
            if (i) out += ", ";
            out += m.chain[i];
        }
    }
    const int offset = m.record_shift - m.query_shift;
    if (offset != 0) out += " (offset " + std::to_string(offset) + ")";
    return out;
}

}  // namespace detail

/**
 * Run the enabled stages in their fixed order.  Every stage is fenced: an
 * error inside one method becomes a diagnostic line and the run continues.
 * A candidate is emitted only after its own verification step succeeds.
 */
inline FitOutcome run_fit(const std::vector<Int>& seq, const FitOptions& opt = {}) {
    if (seq.size() < 6)
        throw PreconditionViolated("fit requires at least 6 terms");
    for (const auto& name : opt.methods) {
        const auto& known = method_names();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw PreconditionViolated("unknown method '" + name + "'");
    }

    FitOutcome out;
    const std::size_t N = seq.size();
    const Series s = Series::from_integers(seq);

    auto stop = [&]() { return opt.first_only && !out.results.empty(); };
    auto diag = [&](std::string line) { out.diagnostics.push_back(std::move(line)); };

    // The recurrence guess is shared by the precurrence and hypergeometric
    // stages (and recomputed internally by the algebraic stage).
    std::optional<PRecurrence> shared_rec;
    bool rec_computed = false;
    auto recurrence = [&]() -> const std::optional<PRecurrence>& {
        if (!rec_computed) {
            rec_computed = true;
            shared_rec = guess_precurrence(seq, opt.dmax, opt.kmax);
        }
        return shared_rec;
    };

    // --- rational: one balanced-degree fraction, three acceptance gates ----
    if (detail::method_enabled(opt, "rational") && !stop()) {
        try {
            const RationalFitOutcome fit = fit_rational_series(s);
            if (!fit.fraction) {
                diag("rational: no fraction solves the coefficient system");
            } else if (!fit.accepted()) {
                diag("rational: candidate rejected (surplus: " +
                     std::to_string(fit.surplus_verified) +
                     ", degree: " + detail::gate_word(fit.degree_ok) +
                     ", size: " + detail::gate_word(fit.size_ok) + ")");
            } else {
                const GFExpression expr = expr_rational(*fit.fraction);
                if (expression_expand(expr, N) == s)
                    out.results.push_back({"rational", format_expression(expr), N,
                                           "degrees (" + std::to_string(fit.L) + ", " +
                                               std::to_string(fit.M) + "), surplus " +
                                               std::to_string(fit.surplus_verified)});
            }
        } catch (const Error& e) {
            diag(std::string("rational: error: ") + e.what());
        }
    }

    // --- transform: rational fit after a change of view -------------------
    if (detail::method_enabled(opt, "transform") && !stop()) {
        try {
            if (const auto rep = transform_guess(seq)) {
                const std::string expr = format_expression(rep->candidate);
                const bool duplicate =
                    std::any_of(out.results.begin(), out.results.end(),
                                [&](const GuessResult& r) { return r.expression == expr; });
                if (duplicate)
                    diag("transform: identity view repeats the rational result");
                else if (expression_expand(rep->candidate, N) == s)
                    out.results.push_back({"transform", expr, N,
                                           "degrees (" + std::to_string(rep->L) + ", " +
                                               std::to_string(rep->M) + ")"});
            } else {
                diag("transform: no transformed view admits an acceptable fraction");
            }
        } catch (const Error& e) {
            diag(std::string("transform: error: ") + e.what());
        }
    }

    // --- precurrence: linear recurrence with polynomial coefficients ------
    if (detail::method_enabled(opt, "precurrence") && !stop()) {
        try {
            const auto& rec = recurrence();
            if (!rec) {
                diag("precurrence: no recurrence within the order/degree window");
            } else if (verify_precurrence(*rec, seq)) {
                out.results.push_back({"precurrence", format_recurrence(*rec), N,
                                       "order " + std::to_string(rec->k) + ", degree " +
                                           std::to_string(rec->d) + ", valid from n = " +
                                           std::to_string(rec->n0)});
            }
        } catch (const Error& e) {
            diag(std::string("precurrence: error: ") + e.what());
        }
    }

    // --- hypergeometric: first-order term ratio with rational roots -------
    if (detail::method_enabled(opt, "hypergeometric") && !stop()) {
        try {
            const auto& rec = recurrence();
            if (!rec || rec->k != 1) {
                diag("hypergeometric: no first-order term ratio available");
            } else {
                const KRatio ratio = ratio_from_recurrence(*rec);
                const auto form = ratio_to_hypergeometric(ratio, Rat(seq[0]));
                if (!form) {
                    diag("hypergeometric: ratio roots are not all rational");
                } else if (hypergeometric_expand(*form, N) == s) {
                    out.results.push_back({"hypergeometric", format_hypergeometric(*form), N,
                                           "ratio degrees (" +
                                               std::to_string(ratio.num.degree()) + ", " +
                                               std::to_string(ratio.den.degree()) + ")"});
                } else {
                    diag("hypergeometric: candidate expansion disagrees with the input");
                }
            }
        } catch (const Error& e) {
            diag(std::string("hypergeometric: error: ") + e.what());
        }
    }

    // --- algebraic: lattice reconstruction of a polynomial equation -------
    if (detail::method_enabled(opt, "algebraic") && !stop()) {
        try {
            AlgdepConfig cfg;
            cfg.precision = opt.precision;
            cfg.base_point = opt.base_point;
            cfg.points = opt.points;
            cfg.terms = opt.extend;
            const auto eq = reconstruct_algebraic(seq, cfg);
            if (!eq) {
                diag("algebraic: no integer relation found at the working precision");
            } else if (verify_annihilation(*eq, s)) {
                out.results.push_back({"algebraic", format_algebraic(*eq), N,
                                       "x-degree " + std::to_string(eq->x_degree()) +
                                           ", z-degree " + std::to_string(eq->z_degree())});
                if (!stop())
                    if (const auto closed = solve_closed_form(*eq, s))
                        out.results.push_back({"algebraic", format_expression(*closed), N,
                                               "closed-form solution of the equation"});
            } else {
                diag("algebraic: reconstructed equation fails symbolic verification");
            }
        } catch (const Error& e) {
            diag(std::string("algebraic: error: ") + e.what());
        }
    }

    // --- euler: integral exponents of the product form ---------------------
    if (detail::method_enabled(opt, "euler") && !stop()) {
        try {
            const auto ep = euler_guess(seq);
            if (!ep) {
                diag("euler: exponents are not integral (or the sequence does not start with 1)");
            } else if (euler_expand(ep->exponents, N) == s) {
                std::string note = "no exponent pattern";
                if (ep->pattern) {
                    if (std::holds_alternative<PeriodicPattern>(*ep->pattern))
                        note = "periodic exponent pattern";
                    else
                        note = "rational exponent generating function";
                }
                out.results.push_back({"euler", format_euler_product(*ep), N, note});
            }
        } catch (const Error& e) {
            diag(std::string("euler: error: ") + e.what());
        }
    }

    // --- lookup: database match modulo up to two transformations ----------
    if (detail::method_enabled(opt, "lookup") && !stop()) {
        if (!opt.db) {
            if (!opt.methods.empty()) diag("lookup: no database supplied");
        } else {
            try {
                const auto matches = findhard(seq, *opt.db);
                if (matches.empty()) diag("lookup: no database record within two transformations");
                for (const auto& m : matches) {
                    if (stop()) break;
                    if (!verify_match(seq, m, *opt.db)) continue;
                    std::string name;
                    for (const auto& rec : opt.db->records)
                        if (rec.id == m.id) {
                            name = rec.name;
                            break;
                        }
                    std::string note = "alignment (" + std::to_string(m.query_shift) + ", " +
                                       std::to_string(m.record_shift) + ")";
                    if (!name.empty()) note += "; " + name;
                    out.results.push_back({"lookup", detail::format_match(m), N, note});
                }
            } catch (const Error& e) {
                diag(std::string("lookup: error: ") + e.what());
            }
        }
    }

    return out;
}

// ---------------------------------------------------------------------------
// Corpus driver
// ---------------------------------------------------------------------------

/** One regression line: a sequence with its expected method and expression. */
struct CorpusEntry {
    std::string id;
    std::string method;
    std::string expression;
    std::vector<Int> terms;
};

/** Aggregate outcome of a corpus run. */
struct CorpusSummary {
    long total = 0;
    long matched = 0;
    std::vector<std::pair<std::string, std::pair<long, long>>> per_method;  ///< tag -> (matched, total)
    std::vector<std::string> failures;                                      ///< rendered failure lines

    bool ok() const { return total > 0 && matched == total; }
};

/**
 * Read a corpus file: one entry per line as
 *   id <TAB> method <TAB> expression <TAB> t0,t1,...
 * Blank lines and lines starting with '#' are skipped.
 */
inline std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);
    std::vector<CorpusEntry> corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields.size() != 4)
            throw ParseError("corpus line " + std::to_string(lineno) +
                                 ": expected 4 tab-separated fields",
                             lineno);
        CorpusEntry entry{fields[0], fields[1], fields[2], {}};
        entry.terms = parse_sequence_input(fields[3]).first;
        if (entry.terms.empty())
            throw ParseError("corpus line " + std::to_string(lineno) + ": empty term list",
                             lineno);
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

/**
 * Re-derive every corpus entry with the full pipeline and require, per entry,
 * some result carrying the expected method tag whose expression normalizes to
 * the expected one.
 */
inline CorpusSummary run_corpus(const std::vector<CorpusEntry>& corpus,
                                const SequenceDB* db = nullptr) {
    CorpusSummary sum;
    for (const auto& entry : corpus) {
        ++sum.total;
        auto& slot = [&]() -> std::pair<long, long>& {
            for (auto& kv : sum.per_method)
                if (kv.first == entry.method) return kv.second;
            sum.per_method.push_back({entry.method, {0, 0}});
            return sum.per_method.back().second;
        }();
        ++slot.second;

        FitOptions opt;
        opt.db = db;
        std::string failure;
        try {
            const FitOutcome fo = run_fit(entry.terms, opt);
            const std::string want =
                normalize_result_expression(entry.method, entry.expression);
            bool hit = false;
            std::string same_method;
            for (const auto& r : fo.results) {
                if (r.method != entry.method) continue;
                if (normalize_result_expression(r.method, r.expression) == want) {
                    hit = true;
                    break;
                }
                if (!same_method.empty()) same_method += " | ";
                same_method += r.expression;
            }
            if (hit) {
                ++sum.matched;
                ++slot.first;
            } else {
                failure = entry.id + ": expected " + entry.method + " " + entry.expression +
                          "; got " + (same_method.empty() ? "none" : same_method);
            }
        } catch (const Error& e) {
            failure = entry.id + ": error: " + e.what();
        }
        if (!failure.empty()) sum.failures.push_back(std::move(failure));
    }
    return sum;
}

inline CorpusSummary run_corpus(const std::string& corpus_path,
                                const SequenceDB* db = nullptr) {
    return run_corpus(load_corpus(corpus_path), db);
}

/** Plain-text report: per-method counts, failures, and the overall total. */
inline std::string format_corpus_summary(const CorpusSummary& sum) {
    std::ostringstream os;
    for (const auto& [method, counts] : sum.per_method)
        os << method << ": " << counts.first << "/" << counts.second << "\n";
    for (const auto& f : sum.failures) os << "FAIL " << f << "\n";
    os << "total: " << sum.matched << "/" << sum.total << "\n";
    return os.str();
}

}  // namespace gfkit
