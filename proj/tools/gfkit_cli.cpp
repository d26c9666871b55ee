/**
 * gfkit command-line front end.
 *
 * Subcommands:
 *   fit      run the discovery pipeline on a sequence
 *   recur    guess a linear recurrence with polynomial coefficients
 *   algdep   minimal polynomial of a decimal constant, or an algebraic
 *            equation for a sequence's generating function
 *   euler    product form with integral exponents
 *   table    generate a number tableau, or fit a triangle with a
 *            two-variable rational generating function
 *   lookup   match a sequence against a database through transformations
 *   corpus   re-derive every entry of a regression corpus
 *
 * Exit codes: 0 success, 1 no result (or corpus mismatches), 2 bad usage
 * or unreadable input.
 */

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gfkit.hpp>

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string terms;
    bool from_stdin = false;
    long offset = 0;
    std::string methods;
    long dmax = 4;
    long kmax = 5;
    unsigned long precision = 118;
    long base_point = 100;
    long points = 12;
    long extend = 200;
    std::string db_path;
    bool json = false;
    bool first_only = false;

    // algdep constant mode
    std::string value;
    long degree = 2;

    // table
    std::string spec;
    long rows = 8;
    std::string init = "1";
    std::string triangle;
    long num_t = 2, den_t = 2, num_z = 2, den_z = 2;

    // corpus
    std::string corpus_path;
};

/** Attach the sequence-input flags shared by every sequence subcommand. */
void add_sequence_inputs(CLI::App* cmd, Options& o) {
    cmd->add_option("--terms", o.terms, "Comma- or space-separated integer terms");
    cmd->add_flag("--stdin", o.from_stdin, "Read the terms from standard input");
    cmd->add_option("--offset", o.offset, "Index of the first term (bookkeeping only)");
}

/** Read the input sequence from --terms or standard input. */
std::vector<gfkit::Int> read_sequence(const CLI::App* cmd, const Options& o, long& offset) {
    if (o.from_stdin == !o.terms.empty())
        throw CLI::ValidationError("input", "give the sequence with exactly one of --terms / --stdin");
    std::string text = o.terms;
    if (o.from_stdin) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    }
    auto [terms, parsed_offset] = gfkit::parse_sequence_input(text);
    offset = cmd->count("--offset") ? o.offset : parsed_offset;
    return std::move(terms);
}

/** Split and validate a --methods list against the pipeline stage names. */
std::vector<std::string> parse_methods(const std::string& arg) {
    std::vector<std::string> out;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto& known = gfkit::method_names();
        if (std::find(known.begin(), known.end(), tok) == known.end()) {
            std::string allowed;
            for (const auto& n : known) allowed += (allowed.empty() ? "" : ", ") + n;
            throw CLI::ValidationError("--methods", "unknown method '" + tok + "' (one of: " + allowed + ")");
        }
        out.push_back(tok);
    }
    return out;
}

gfkit::SequenceDB load_db_checked(const std::string& path) {
    gfkit::SequenceDB db = gfkit::load_db(path);
    for (const auto& w : db.warnings) std::cerr << "warning: " << w << "\n";
    return db;
}

int cmd_fit(const CLI::App* cmd, const Options& o) {
    long offset = 0;
    const auto terms = read_sequence(cmd, o, offset);

    gfkit::FitOptions fit;
    fit.methods = parse_methods(o.methods);
    fit.dmax = o.dmax;
    fit.kmax = o.kmax;
    fit.precision = o.precision;
    fit.base_point = o.base_point;
    fit.points = o.points;
    fit.extend = o.extend;
    fit.first_only = o.first_only;
    gfkit::SequenceDB db;
    if (!o.db_path.empty()) {
        db = load_db_checked(o.db_path);
        fit.db = &db;
    }

    const gfkit::FitOutcome out = gfkit::run_fit(terms, fit);
    if (o.json) {
        ordered_json j;
        j["offset"] = offset;
        j["results"] = ordered_json::array();
        for (const auto& r : out.results)
            j["results"].push_back({{"method", r.method},
                                    {"expression", r.expression},
                                    {"verified_through", r.verified_through},
                                    {"details", r.details}});
        j["diagnostics"] = out.diagnostics;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : out.results) std::cout << r.method << "\t" << r.expression << "\n";
        for (const auto& d : out.diagnostics) std::cout << "# " << d << "\n";
    }
    return out.found() ? 0 : 1;
}

int cmd_recur(const CLI::App* cmd, const Options& o) {
    long offset = 0;
    const auto terms = read_sequence(cmd, o, offset);
    const auto rec = gfkit::guess_precurrence(terms, o.dmax, o.kmax);

    // --extend N asks for N terms beyond the input; the input occupies
    // ranks 1..len, so generation restarts at rank len + 1.
    std::vector<gfkit::Int> extended;
    if (rec && cmd->count("--extend")) {
        gfkit::PRecurrence tail = *rec;
        tail.n0 = static_cast<long>(terms.size()) + 1;
        const auto all = gfkit::extend_precurrence(tail, terms, terms.size() + o.extend);
        extended.assign(all.begin() + static_cast<long>(terms.size()), all.end());
    }

    if (o.json) {
        ordered_json j;
        if (rec) {
            j["recurrence"] = gfkit::format_recurrence(*rec);
            j["order"] = rec->k;
            j["degree"] = rec->d;
            j["valid_from"] = rec->n0;
            j["extended"] = ordered_json::array();
            for (const auto& t : extended) j["extended"].push_back(t.get_str());
        } else {
            j["recurrence"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        if (!rec) {
            std::cout << "# precurrence: no recurrence within the order/degree window\n";
        } else {
            std::cout << gfkit::format_recurrence(*rec) << "\n";
            if (!extended.empty()) {
                for (std::size_t i = 0; i < extended.size(); ++i)
                    std::cout << (i ? "," : "") << extended[i].get_str();
                std::cout << "\n";
            }
        }
    }
    return rec ? 0 : 1;
}

int cmd_algdep(const CLI::App* cmd, const Options& o) {
    if (!o.value.empty()) {
        // constant mode: minimal polynomial of a decimal value
        const gfkit::FixedDecimal x = gfkit::FixedDecimal::parse(o.value);
        const unsigned long digits = cmd->count("--precision") ? o.precision : x.precision;
        const auto poly = gfkit::algdep(x, o.degree, digits);
        if (o.json) {
            ordered_json j;
            j["polynomial"] =
                poly ? ordered_json(gfkit::format_poly_descending(*poly, "x")) : ordered_json(nullptr);
            std::cout << j.dump(2) << "\n";
        } else if (poly) {
            std::cout << gfkit::format_poly_descending(*poly, "x") << "\n";
        } else {
            std::cout << "# algdep: no integer relation at the working precision\n";
        }
        return poly ? 0 : 1;
    }

    long offset = 0;
    const auto terms = read_sequence(cmd, o, offset);
    gfkit::AlgdepConfig cfg;
    cfg.precision = o.precision;
    cfg.base_point = o.base_point;
    cfg.points = o.points;
    cfg.terms = o.extend;
    const auto eq = gfkit::reconstruct_algebraic(terms, cfg);
    std::optional<gfkit::GFExpression> closed;
    if (eq) closed = gfkit::solve_closed_form(*eq, gfkit::Series::from_integers(terms));

    if (o.json) {
        ordered_json j;
        j["equation"] = eq ? ordered_json(gfkit::format_algebraic(*eq)) : ordered_json(nullptr);
        j["closed_form"] =
            closed ? ordered_json(gfkit::format_expression(*closed)) : ordered_json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        if (!eq) {
            std::cout << "# algebraic: no integer relation found at the working precision\n";
        } else {
            std::cout << gfkit::format_algebraic(*eq) << "\n";
            if (closed) std::cout << gfkit::format_expression(*closed) << "\n";
        }
    }
    return eq ? 0 : 1;
}

int cmd_euler(const CLI::App* cmd, const Options& o) {
    long offset = 0;
    const auto terms = read_sequence(cmd, o, offset);
    const auto ep = gfkit::euler_guess(terms);
    if (o.json) {
        ordered_json j;
        j["product"] = ep ? ordered_json(gfkit::format_euler_product(*ep)) : ordered_json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else if (ep) {
        std::cout << gfkit::format_euler_product(*ep) << "\n";
    } else {
        std::cout << "# euler: exponents are not integral (or the sequence does not start with 1)\n";
    }
    return ep ? 0 : 1;
}

int cmd_table(const CLI::App* cmd, const Options& o) {
    if (!o.spec.empty()) {
        // generation mode
        std::stringstream ss(o.spec);
        std::vector<long> v;
        std::string tok;
        while (std::getline(ss, tok, ',')) v.push_back(std::stol(tok));
        if (v.size() != 6)
            throw CLI::ValidationError("--spec", "expected six comma-separated integers a,b,c,r,s,t");
        const gfkit::TableauSpec spec(v[0], v[1], v[2], v[3], v[4], v[5]);
        const gfkit::Triangle tri =
            gfkit::generate_tableau(spec, static_cast<std::size_t>(o.rows), gfkit::Int(o.init));
        std::cout << gfkit::format_triangle(tri);
        return 0;
    }

    // fitting mode
    std::string text = o.triangle;
    if (o.from_stdin == !text.empty())
        throw CLI::ValidationError("input", "give the triangle with exactly one of --triangle / --stdin");
    if (o.from_stdin) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        for (auto& ch : text)
            if (ch == ';') ch = '\n';
    }
    const gfkit::Triangle tri = gfkit::parse_triangle(text);
    // The fitter needs Lz + Mz + 3 rows.  When the z-degree bounds were left
    // at their defaults, shrink them to what the triangle can support instead
    // of failing; explicitly requested bounds are honored as given.
    long num_z = o.num_z, den_z = o.den_z;
    const long nrows = static_cast<long>(tri.rows.size());
    const bool num_z_set = cmd->count("--num-z") > 0, den_z_set = cmd->count("--den-z") > 0;
    while (num_z + den_z + 3 > nrows) {
        if (!num_z_set && num_z >= den_z && num_z > 0) --num_z;
        else if (!den_z_set && den_z > 0) --den_z;
        else if (!num_z_set && num_z > 0) --num_z;
        else break;
    }
    const auto gf = gfkit::bivariate_fit(tri, o.num_t, o.den_t, num_z, den_z);
    if (o.json) {
        ordered_json j;
        j["gf"] = gf ? ordered_json(gfkit::format_bivariate_gf(*gf)) : ordered_json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else if (gf) {
        std::cout << gfkit::format_bivariate_gf(*gf) << "\n";
    } else {
        std::cout << "# table: no bivariate rational fit at the given degrees\n";
    }
    return gf ? 0 : 1;
}

int cmd_lookup(const CLI::App* cmd, const Options& o) {
    long offset = 0;
    const auto terms = read_sequence(cmd, o, offset);
    const gfkit::SequenceDB db = load_db_checked(o.db_path);

    gfkit::FitOptions fit;
    fit.methods = {"lookup"};
    fit.db = &db;
    const gfkit::FitOutcome out = gfkit::run_fit(terms, fit);
    if (o.json) {
        ordered_json j;
        j["matches"] = ordered_json::array();
        for (const auto& r : out.results)
            j["matches"].push_back({{"match", r.expression}, {"details", r.details}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : out.results) std::cout << r.expression << "\t" << r.details << "\n";
        for (const auto& d : out.diagnostics) std::cout << "# " << d << "\n";
    }
    return out.found() ? 0 : 1;
}

int cmd_corpus(const Options& o) {
    gfkit::SequenceDB db;
    const gfkit::SequenceDB* dbp = nullptr;
    if (!o.db_path.empty()) {
        db = load_db_checked(o.db_path);
        dbp = &db;
    }
    const auto corpus = gfkit::load_corpus(o.corpus_path);
    const auto start = std::chrono::steady_clock::now();
    const gfkit::CorpusSummary sum = gfkit::run_corpus(corpus, dbp);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.json) {
        ordered_json j;
        j["total"] = sum.total;
        j["matched"] = sum.matched;
        j["per_method"] = ordered_json::object();
        for (const auto& [method, counts] : sum.per_method)
            j["per_method"][method] = {{"matched", counts.first}, {"total", counts.second}};
        j["failures"] = sum.failures;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << gfkit::format_corpus_summary(sum);
    }
    std::cerr << "elapsed: " << secs << "s\n";
    return sum.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discover closed-form generating functions for integer sequences"};
    app.require_subcommand(1);
    Options o;

    CLI::App* fit = app.add_subcommand("fit", "Run the discovery pipeline on a sequence");
    add_sequence_inputs(fit, o);
    fit->add_option("--methods", o.methods, "Comma-separated subset of pipeline stages");
    fit->add_option("--dmax", o.dmax, "Recurrence coefficient degree bound");
    fit->add_option("--kmax", o.kmax, "Recurrence order bound");
    fit->add_option("--precision", o.precision, "Working digits for the numeric stage");
    fit->add_option("--base-point", o.base_point, "Denominator of the smallest sample point");
    fit->add_option("--points", o.points, "Number of sample points");
    fit->add_option("--extend", o.extend, "Series length for numeric evaluation");
    fit->add_option("--db", o.db_path, "Sequence database for the lookup stage");
    fit->add_flag("--json", o.json, "Emit JSON");
    fit->add_flag("--first-only", o.first_only, "Stop at the first verified candidate");

    CLI::App* recur = app.add_subcommand("recur", "Guess a linear recurrence with polynomial coefficients");
    add_sequence_inputs(recur, o);
    recur->add_option("--dmax", o.dmax, "Coefficient degree bound");
    recur->add_option("--kmax", o.kmax, "Order bound");
    recur->add_option("--extend", o.extend, "Also print this many further terms");
    recur->add_flag("--json", o.json, "Emit JSON");

    CLI::App* algdep = app.add_subcommand(
        "algdep", "Minimal polynomial of a constant, or an algebraic equation for a sequence");
    add_sequence_inputs(algdep, o);
    algdep->add_option("--value", o.value, "Decimal constant (enables constant mode)");
    algdep->add_option("--degree", o.degree, "Polynomial degree bound in constant mode");
    algdep->add_option("--precision", o.precision, "Working digits");
    algdep->add_option("--base-point", o.base_point, "Denominator of the smallest sample point");
    algdep->add_option("--points", o.points, "Number of sample points");
    algdep->add_option("--extend", o.extend, "Series length for numeric evaluation");
    algdep->add_flag("--json", o.json, "Emit JSON");

    CLI::App* euler = app.add_subcommand("euler", "Product form with integral exponents");
    add_sequence_inputs(euler, o);
    euler->add_flag("--json", o.json, "Emit JSON");

    CLI::App* table = app.add_subcommand(
        "table", "Generate a tableau from a six-parameter rule, or fit a triangle");
    table->add_option("--spec", o.spec, "Generation rule a,b,c,r,s,t (each in [-4, 4])");
    table->add_option("--rows", o.rows, "Rows to generate");
    table->add_option("--init", o.init, "Corner entry for generation");
    table->add_option("--triangle", o.triangle, "Triangle rows, ';'-separated");
    table->add_flag("--stdin", o.from_stdin, "Read the triangle from standard input");
    table->add_option("--num-t", o.num_t, "Numerator degree in t");
    table->add_option("--den-t", o.den_t, "Denominator degree in t");
    table->add_option("--num-z", o.num_z, "Numerator degree in z");
    table->add_option("--den-z", o.den_z, "Denominator degree in z");
    table->add_flag("--json", o.json, "Emit JSON");

    CLI::App* lookup = app.add_subcommand("lookup", "Match a sequence against a database");
    add_sequence_inputs(lookup, o);
    lookup->add_option("--db", o.db_path, "Sequence database file")->required();
    lookup->add_flag("--json", o.json, "Emit JSON");

    CLI::App* corpus = app.add_subcommand("corpus", "Re-derive every entry of a regression corpus");
    corpus->add_option("file", o.corpus_path, "Corpus file (id, method, expression, terms)")->required();
    corpus->add_option("--db", o.db_path, "Sequence database for lookup entries");
    corpus->add_flag("--json", o.json, "Emit JSON");

    int rc = 0;
    fit->callback([&] { rc = cmd_fit(fit, o); });
    recur->callback([&] { rc = cmd_recur(recur, o); });
    algdep->callback([&] { rc = cmd_algdep(algdep, o); });
    euler->callback([&] { rc = cmd_euler(euler, o); });
    table->callback([&] { rc = cmd_table(table, o); });
    lookup->callback([&] { rc = cmd_lookup(lookup, o); });
    corpus->callback([&] { rc = cmd_corpus(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gfkit::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfkit::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfkit::PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
