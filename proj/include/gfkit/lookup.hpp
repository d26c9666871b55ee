#pragma once

/**
 * Sequence-table lookup with transformation chains.
 *
 * A small on-disk table of named integer sequences is loaded into memory and
 * indexed by a comparison window (the terms at ranks 2..16).  A query sequence
 * matches a stored record when, after shifting either side's window start by
 * up to three positions, one window is a prefix of the other with at least
 * seven terms in common.  findhard() additionally searches through chains of
 * up to two termwise transformations (adding a constant, partial sums, Euler
 * transform, ...), each available on the plain coefficient view and -- where
 * division and re-multiplication by n! keeps everything integral -- on the
 * exponential view.
 */

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gfkit/errors.hpp"
#include "gfkit/euler.hpp"
#include "gfkit/numeric.hpp"
#include "gfkit/series.hpp"

namespace gfkit {

/** One stored sequence: identifier, terms, and an optional display name. */
struct SequenceRecord {
    std::string id;
    std::vector<Int> terms;
    std::string name;
};

/**
 * Loaded sequence table.  records preserves file order; warnings collects
 * human-readable notes about lines that were skipped during loading.  The
 * index holds (window, record position) pairs sorted by window for binary
 * search; only records with at least 8 terms are indexed (shorter records
 * cannot produce the 7-term overlap required for a match).
 */
struct SequenceDB {
    std::vector<SequenceRecord> records;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::vector<Int>, std::size_t>> index;
};

/** A lookup hit: the transformation chain applied to the query (possibly
 *  empty), the matched record id, and the window start shifts used on the
 *  query and record sides. */
struct MatchResult {
    std::vector<std::string> chain;
    std::string id;
    int query_shift = 0;
    int record_shift = 0;

    bool operator==(const MatchResult&) const = default;
};

/** One entry of the transformation catalog.  forward returns std::nullopt
 *  when the sequence is outside the transformation's domain (applies() is the
 *  cheap pre-check; forward re-validates).  inverse_name names the catalog
 *  entry that undoes this one, when such an entry exists. */
struct TransformationSpec {
    std::string name;
    std::string category;
    std::string view;
    std::string inverse_name;
    std::function<bool(const std::vector<Int>&)> applies;
    std::function<std::optional<std::vector<Int>>(const std::vector<Int>&)> forward;
};

namespace detail {

/** Comparison window: the terms at ranks 2..16, start shifted right by
 *  `shift` positions.  May hold fewer than 15 terms (or be empty). */
inline std::vector<Int> lookup_window(const std::vector<Int>& terms, int shift) {
    std::vector<Int> w;
    const std::size_t lo = static_cast<std::size_t>(1 + shift);
    const std::size_t hi = std::min(terms.size(), static_cast<std::size_t>(16 + shift));
    for (std::size_t i = lo; i < hi; ++i) w.push_back(terms[i]);
    return w;
}

/** Windows match when one is a prefix of the other and they share >= 7 terms. */
inline bool windows_match(const std::vector<Int>& q, const std::vector<Int>& r) {
    const std::size_t m = std::min(q.size(), r.size());
    if (m < 7) return false;
    for (std::size_t i = 0; i < m; ++i)
        if (q[i] != r[i]) return false;
    return true;
}

inline bool starts_with(const std::vector<Int>& longer, const std::vector<Int>& prefix) {
    if (longer.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (longer[i] != prefix[i]) return false;
    return true;
}

/** Alignment pairs (query shift, record shift) in search order: smaller total
 *  shift first, then smaller query shift. */
inline const std::vector<std::pair<int, int>>& alignment_order() {
    static const std::vector<std::pair<int, int>> order = [] {
        std::vector<std::pair<int, int>> v;
        for (int s = 0; s <= 6; ++s)
            for (int sq = 0; sq <= 3; ++sq) {
                const int sr = s - sq;
                if (sr >= 0 && sr <= 3) v.emplace_back(sq, sr);
            }
        return v;
    }();
    return order;
}

} // namespace detail

/**
 * Load a sequence table from a text file.  Each data line has the form
 *
 *     A000108 ,1,1,2,5,14,42,132,
 *
 * i.e. an identifier, a space, and comma-separated terms with a leading and
 * trailing comma.  An optional " ; free-form name" may follow the terms.
 * Blank lines and lines starting with '#' are skipped.
 * Malformed lines are skipped too, with a note appended to db.warnings; only
 * an unreadable file is an error.
 *
 * @throws IoError when the file cannot be opened.
 */
inline SequenceDB load_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sequence table: " + path);

    SequenceDB db;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '#') continue;

        const std::size_t sp = line.find(' ', b);
        if (sp == std::string::npos) {
            db.warnings.push_back("line " + std::to_string(lineno) + ": missing term list");
            continue;
        }
        SequenceRecord rec;
        rec.id = line.substr(b, sp - b);
        if (rec.id.empty() || rec.id[0] != 'A') {
            db.warnings.push_back("line " + std::to_string(lineno) + ": identifier must start with 'A'");
            continue;
        }

        bool ok = true;
        std::string body = line.substr(sp + 1);
        const std::size_t semi = body.find(';');
        if (semi != std::string::npos) {
            const std::size_t nb = body.find_first_not_of(" \t\r", semi + 1);
            if (nb != std::string::npos) {
                const std::size_t ne = body.find_last_not_of(" \t\r");
                rec.name = body.substr(nb, ne - nb + 1);
            }
            body.resize(semi);
        }
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const std::size_t tb = tok.find_first_not_of(" \t\r");
            if (tb == std::string::npos) continue;  // empty segment from leading/trailing comma
            const std::size_t te = tok.find_last_not_of(" \t\r");
            const std::string t = tok.substr(tb, te - tb + 1);
            try {
                rec.terms.emplace_back(t);
            } catch (const std::invalid_argument&) {
                db.warnings.push_back("line " + std::to_string(lineno) + ": bad term '" + t + "'");
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (rec.terms.empty()) {
            db.warnings.push_back("line " + std::to_string(lineno) + ": empty term list");
            continue;
        }
        db.records.push_back(std::move(rec));
    }

    for (std::size_t i = 0; i < db.records.size(); ++i) {
        std::vector<Int> w = detail::lookup_window(db.records[i].terms, 0);
        if (w.size() >= 7) db.index.emplace_back(std::move(w), i);
    }
    std::sort(db.index.begin(), db.index.end());
    return db;
}

/**
 * Direct window lookup.  Tries every alignment pair in alignment_order();
 * record-side shift 0 goes through the sorted index (binary search in both
 * prefix directions), positive record shifts scan the table linearly.  At
 * most one result per record id is returned (the first alignment that
 * matches); results are ordered by (total shift, query shift, id).
 */
inline std::vector<MatchResult> find(const std::vector<Int>& seq, const SequenceDB& db) {
    std::vector<MatchResult> out;
    std::set<std::string> matched_ids;

    for (const auto& [sq, sr] : detail::alignment_order()) {
        const std::vector<Int> q = detail::lookup_window(seq, sq);
        if (q.size() < 7) continue;

        std::vector<std::size_t> hits;
        if (sr == 0) {
            // Records whose window extends q (or equals it): contiguous run at lower_bound(q).
            auto it = std::lower_bound(db.index.begin(), db.index.end(), q,
                                       [](const auto& entry, const std::vector<Int>& key) {
                                           return entry.first < key;
                                       });
            for (; it != db.index.end() && detail::starts_with(it->first, q); ++it)
                hits.push_back(it->second);
            // Records whose window is a proper prefix of q: exact search per length.
            for (std::size_t len = 7; len < q.size(); ++len) {
                const std::vector<Int> key(q.begin(), q.begin() + len);
                auto lo = std::lower_bound(db.index.begin(), db.index.end(), key,
                                           [](const auto& entry, const std::vector<Int>& k) {
                                               return entry.first < k;
                                           });
                for (; lo != db.index.end() && lo->first == key; ++lo)
                    hits.push_back(lo->second);
            }
        } else {
            for (std::size_t i = 0; i < db.records.size(); ++i) {
                const std::vector<Int> r = detail::lookup_window(db.records[i].terms, sr);
                if (detail::windows_match(q, r)) hits.push_back(i);
            }
        }

        std::vector<MatchResult> batch;
        for (std::size_t i : hits) {
            const std::string& id = db.records[i].id;
            if (matched_ids.count(id)) continue;
            batch.push_back(MatchResult{{}, id, sq, sr});
        }
        std::sort(batch.begin(), batch.end(),
                  [](const MatchResult& a, const MatchResult& b) { return a.id < b.id; });
        for (auto& m : batch) {
            matched_ids.insert(m.id);
            out.push_back(std::move(m));
        }
    }
    return out;
}

namespace detail {

using RatSeq = std::vector<Rat>;

inline std::optional<std::vector<Int>> ratseq_to_int(const RatSeq& v) {
    std::vector<Int> out;
    out.reserve(v.size());
    for (const Rat& x : v) {
        if (!is_integer(x)) return std::nullopt;
        out.push_back(x.get_num());
    }
    return out;
}

inline RatSeq int_to_ratseq(const std::vector<Int>& v) {
    return RatSeq(v.begin(), v.end());
}

/** Positive content of a rational sequence: gcd of numerators over lcm of
 *  denominators (0 when every term is zero). */
inline Rat ratseq_content(const RatSeq& v) {
    Int g = 0, l = 1;
    for (const Rat& x : v) {
        g = int_gcd(g, x.get_num());
        l = int_lcm(l, x.get_den());
    }
    if (g == 0) return Rat(0);
    return make_rat(g < 0 ? Int(-g) : g, l);
}

/** Core transformations over rational term sequences.  Each returns
 *  std::nullopt when the input is outside its domain. */

inline std::optional<RatSeq> core_add_const(const RatSeq& a, long c) {
    RatSeq b = a;
    for (Rat& x : b) x += c;
    return b;
}

inline std::optional<RatSeq> core_add_tail(const RatSeq& a, long c) {
    RatSeq b = a;
    for (std::size_t i = 1; i < b.size(); ++i) b[i] += c;
    return b;
}

inline std::optional<RatSeq> core_reciprocal_pow(const RatSeq& a, unsigned long k) {
    if (a.empty() || a[0] != 1) return std::nullopt;
    const Series s = Series(a).pow_int(k);
    return (Series::one(a.size()) / s).coeffs();
}

inline std::optional<RatSeq> core_power(const RatSeq& a, unsigned long k) {
    if (a.empty()) return std::nullopt;
    return Series(a).pow_int(k).coeffs();
}

inline std::optional<RatSeq> core_partial_sums(const RatSeq& a) {
    RatSeq b;
    b.reserve(a.size());
    Rat acc(0);
    for (const Rat& x : a) {
        acc += x;
        b.push_back(acc);
    }
    return b;
}

inline std::optional<RatSeq> core_first_differences(const RatSeq& a) {
    if (a.empty()) return std::nullopt;
    RatSeq b;
    b.reserve(a.size());
    b.push_back(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i) b.push_back(a[i] - a[i - 1]);
    return b;
}

inline std::optional<RatSeq> core_euler(const RatSeq& a) {
    if (a.empty() || a[0] != 1) return std::nullopt;
    const RatSeq c(a.begin() + 1, a.end());
    return euler_expand(c, a.size()).coeffs();
}

inline std::optional<RatSeq> core_inverse_euler(const RatSeq& a) {
    if (a.empty() || a[0] != 1) return std::nullopt;
    try {
        const EulerProduct ep = inverse_euler(Series(a));
        RatSeq b;
        b.reserve(a.size());
        b.emplace_back(1);
        for (const Rat& e : ep.exponents) b.push_back(e);
        return b;
    } catch (const Error&) {
        return std::nullopt;
    }
}

inline std::optional<RatSeq> core_divide_by_content(const RatSeq& a) {
    const Rat g = ratseq_content(a);
    if (g == 0 || g == 1) return std::nullopt;
    RatSeq b = a;
    for (Rat& x : b) x /= g;
    return b;
}

inline std::optional<RatSeq> core_set_complement(const RatSeq& a) {
    std::set<Int> members;
    for (const Rat& x : a) {
        if (!is_integer(x) || x < 0) return std::nullopt;
        members.insert(x.get_num());
    }
    RatSeq b;
    for (Int v = 0; b.size() < 17; ++v)
        if (!members.count(v)) b.emplace_back(v);
    return b;
}

inline std::optional<RatSeq> core_shift_left(const RatSeq& a) {
    if (a.size() < 2) return std::nullopt;
    return RatSeq(a.begin() + 1, a.end());
}

inline std::optional<RatSeq> core_shift_right(const RatSeq& a) {
    RatSeq b;
    b.reserve(a.size() + 1);
    b.emplace_back(0);
    b.insert(b.end(), a.begin(), a.end());
    return b;
}

inline std::optional<RatSeq> core_bisect(const RatSeq& a, std::size_t parity) {
    RatSeq b;
    for (std::size_t i = parity; i < a.size(); i += 2) b.push_back(a[i]);
    if (b.empty()) return std::nullopt;
    return b;
}

struct CoreOp {
    std::string name;
    std::string category;
    std::string inverse;
    bool egf_twin;
    std::function<bool(const RatSeq&)> applies;
    std::function<std::optional<RatSeq>(const RatSeq&)> apply;
};

inline const std::vector<CoreOp>& core_ops() {
    static const std::vector<CoreOp> ops = [] {
        std::vector<CoreOp> v;
        const auto any = [](const RatSeq&) { return true; };
        const auto unit_head = [](const RatSeq& a) { return !a.empty() && a[0] == 1; };

        for (long c = 1; c <= 3; ++c) {
            const std::string sc = std::to_string(c);
            v.push_back({"add_const_" + sc, "translation", "sub_const_" + sc, true, any,
                         [c](const RatSeq& a) { return core_add_const(a, c); }});
            v.push_back({"sub_const_" + sc, "translation", "add_const_" + sc, true, any,
                         [c](const RatSeq& a) { return core_add_const(a, -c); }});
        }
        for (long c = 1; c <= 3; ++c) {
            const std::string sc = std::to_string(c);
            v.push_back({"add_tail_" + sc, "translation", "sub_tail_" + sc, true, any,
                         [c](const RatSeq& a) { return core_add_tail(a, c); }});
            v.push_back({"sub_tail_" + sc, "translation", "add_tail_" + sc, true, any,
                         [c](const RatSeq& a) { return core_add_tail(a, -c); }});
        }
        v.push_back({"reciprocal", "inverse", "reciprocal", true, unit_head,
                     [](const RatSeq& a) { return core_reciprocal_pow(a, 1); }});
        v.push_back({"reciprocal_square", "inverse", "", true, unit_head,
                     [](const RatSeq& a) { return core_reciprocal_pow(a, 2); }});
        v.push_back({"reciprocal_cube", "inverse", "", true, unit_head,
                     [](const RatSeq& a) { return core_reciprocal_pow(a, 3); }});
        v.push_back({"square", "power", "", true,
                     [](const RatSeq& a) { return !a.empty(); },
                     [](const RatSeq& a) { return core_power(a, 2); }});
        v.push_back({"cube", "power", "", true,
                     [](const RatSeq& a) { return !a.empty(); },
                     [](const RatSeq& a) { return core_power(a, 3); }});
        v.push_back({"partial_sums", "sum-difference", "first_differences", true, any, core_partial_sums});
        v.push_back({"first_differences", "sum-difference", "partial_sums", true,
                     [](const RatSeq& a) { return !a.empty(); }, core_first_differences});
        v.push_back({"second_differences", "sum-difference", "", true,
                     [](const RatSeq& a) { return !a.empty(); },
                     [](const RatSeq& a) -> std::optional<RatSeq> {
                         auto b = core_first_differences(a);
                         if (!b) return std::nullopt;
                         return core_first_differences(*b);
                     }});
        v.push_back({"euler", "euler", "inverse_euler", true, unit_head, core_euler});
        v.push_back({"inverse_euler", "euler", "euler", true, unit_head, core_inverse_euler});
        v.push_back({"set_complement_in_naturals", "set", "", false,
                     [](const RatSeq& a) {
                         return std::all_of(a.begin(), a.end(),
                                            [](const Rat& x) { return is_integer(x) && x >= 0; });
                     },
                     core_set_complement});
        v.push_back({"divide_by_gcd", "gcd", "", true,
                     [](const RatSeq& a) {
                         const Rat g = ratseq_content(a);
                         return g != 0 && g != 1;
                     },
                     core_divide_by_content});
        v.push_back({"shift_left", "shift-bisect", "", true,
                     [](const RatSeq& a) { return a.size() >= 2; }, core_shift_left});
        v.push_back({"shift_right", "shift-bisect", "shift_left", true, any, core_shift_right});
        v.push_back({"bisect_even", "shift-bisect", "", true,
                     [](const RatSeq& a) { return !a.empty(); },
                     [](const RatSeq& a) { return core_bisect(a, 0); }});
        v.push_back({"bisect_odd", "shift-bisect", "", true,
                     [](const RatSeq& a) { return a.size() >= 2; },
                     [](const RatSeq& a) { return core_bisect(a, 1); }});
        return v;
    }();
    return ops;
}

} // namespace detail

/**
 * The transformation catalog: every core operation on the plain coefficient
 * view ("ogf"), followed by an "egf_"-prefixed twin that divides term n by
 * n!, applies the operation, multiplies back by n!, and requires the result
 * to be integral.  The ordering is fixed; findhard() reports chains in
 * catalog order.
 */
inline const std::vector<TransformationSpec>& transformation_catalog() {
    static const std::vector<TransformationSpec> catalog = [] {
        std::vector<TransformationSpec> out;
        for (const auto& op : detail::core_ops()) {
            TransformationSpec spec;
            spec.name = op.name;
            spec.category = op.category;
            spec.view = "ogf";
            spec.inverse_name = op.inverse;
            spec.applies = [&op](const std::vector<Int>& s) {
                return op.applies(detail::int_to_ratseq(s));
            };
            spec.forward = [&op](const std::vector<Int>& s) -> std::optional<std::vector<Int>> {
                auto r = op.apply(detail::int_to_ratseq(s));
                if (!r) return std::nullopt;
                return detail::ratseq_to_int(*r);
            };
            out.push_back(std::move(spec));
        }
        for (const auto& op : detail::core_ops()) {
            if (!op.egf_twin) continue;
            const auto to_egf = [](const std::vector<Int>& s) {
                detail::RatSeq v;
                v.reserve(s.size());
                for (std::size_t n = 0; n < s.size(); ++n)
                    v.push_back(make_rat(s[n], factorial(n)));
                return v;
            };
            TransformationSpec spec;
            spec.name = "egf_" + op.name;
            spec.category = op.category;
            spec.view = "egf";
            spec.inverse_name = op.inverse.empty() ? "" : "egf_" + op.inverse;
            spec.applies = [&op, to_egf](const std::vector<Int>& s) {
                return op.applies(to_egf(s));
            };
            spec.forward = [&op, to_egf](const std::vector<Int>& s) -> std::optional<std::vector<Int>> {
                auto r = op.apply(to_egf(s));
                if (!r) return std::nullopt;
                for (std::size_t n = 0; n < r->size(); ++n) (*r)[n] *= factorial(n);
                return detail::ratseq_to_int(*r);
            };
            out.push_back(std::move(spec));
        }
        return out;
    }();
    return catalog;
}

/** Look up a catalog entry by name. */
inline const TransformationSpec* find_transformation(const std::string& name) {
    for (const auto& spec : transformation_catalog())
        if (spec.name == name) return &spec;
    return nullptr;
}

/** Apply a chain of named transformations left to right.  std::nullopt when
 *  a name is unknown or a step rejects its input. */
inline std::optional<std::vector<Int>> apply_chain(const std::vector<Int>& seq,
                                                   const std::vector<std::string>& chain) {
    std::vector<Int> cur = seq;
    for (const std::string& name : chain) {
        const TransformationSpec* spec = find_transformation(name);
        if (spec == nullptr || !spec->applies(cur)) return std::nullopt;
        auto next = spec->forward(cur);
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
    return cur;
}

/** Re-run a match's chain and check its window really agrees with the
 *  matched record at the reported alignment. */
inline bool verify_match(const std::vector<Int>& seq, const MatchResult& m, const SequenceDB& db) {
    auto img = apply_chain(seq, m.chain);
    if (!img) return false;
    const SequenceRecord* rec = nullptr;
    for (const auto& r : db.records)
        if (r.id == m.id) {
            rec = &r;
            break;
        }
    if (rec == nullptr) return false;
    return detail::windows_match(detail::lookup_window(*img, m.query_shift),
                                 detail::lookup_window(rec->terms, m.record_shift));
}

/**
 * Lookup through transformation chains of length 0, 1, and 2.  Results come
 * in chain-length order, then catalog order of the chain entries, then by
 * record id; duplicates (same chain, id, and alignment) are removed, chains
 * that end by undoing their first step are skipped, and every result is
 * re-verified by replaying its chain before being returned.
 */
inline std::vector<MatchResult> findhard(const std::vector<Int>& seq, const SequenceDB& db) {
    std::vector<MatchResult> out;
    std::unordered_set<std::string> seen;
    const auto emit = [&](MatchResult m) {
        std::string key;
        for (const auto& n : m.chain) key += n + "|";
        key += m.id + "@" + std::to_string(m.query_shift) + "," + std::to_string(m.record_shift);
        if (!seen.insert(key).second) return;
        if (!verify_match(seq, m, db)) return;
        out.push_back(std::move(m));
    };

    for (MatchResult& m : find(seq, db)) emit(std::move(m));

    const auto& cat = transformation_catalog();
    std::vector<std::optional<std::vector<Int>>> images(cat.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
        if (!cat[i].applies(seq)) continue;
        images[i] = cat[i].forward(seq);
        if (!images[i]) continue;
        for (MatchResult m : find(*images[i], db)) {
            m.chain = {cat[i].name};
            emit(std::move(m));
        }
    }
    for (std::size_t i = 0; i < cat.size(); ++i) {
        if (!images[i]) continue;
        for (std::size_t j = 0; j < cat.size(); ++j) {
            // A step followed by its declared inverse reproduces the input;
            // such chains only duplicate direct matches, so skip them.
            if (!cat[i].inverse_name.empty() && cat[i].inverse_name == cat[j].name) continue;
            if (!cat[j].applies(*images[i])) continue;
            auto img2 = cat[j].forward(*images[i]);
            if (!img2) continue;
            for (MatchResult m : find(*img2, db)) {
                m.chain = {cat[i].name, cat[j].name};
                emit(std::move(m));
            }
        }
    }
    return out;
}

} // namespace gfkit
