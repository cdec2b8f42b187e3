#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relrep/algebra.hpp"
#include "relrep/model.hpp"
#include "relrep/relation.hpp"
#include "relrep/representation.hpp"

namespace relrep {

struct SearchOptions {
    bool deterministic = true;
    bool symmetry_pruning = false;
    std::uint64_t node_limit = 100'000'000;
};

struct SearchProblem {
    FiniteAlgebra algebra;
    int base_size = 1;
    SearchOptions options;
};

struct SearchOutcome {
    enum class Kind { Found, ExhaustedNone, LimitReached };
    Kind kind = Kind::ExhaustedNone;
    std::optional<Representation> representation;  // present iff Found
    std::uint64_t nodes_explored = 0;
};

inline const char* outcome_name(SearchOutcome::Kind k) {
    switch (k) {
        case SearchOutcome::Kind::Found: return "found";
        case SearchOutcome::Kind::ExhaustedNone: return "exhausted-none";
        case SearchOutcome::Kind::LimitReached: return "limit-reached";
    }
    return "?";
}

/// Called with the element bounds of a subtree root refuted by propagation.
/// Every total assignment within those bounds is claimed non-representing;
/// instrumentation tests re-check that claim by brute force.
using PruneHook =
    std::function<void(const std::vector<Relation>& lo, const std::vector<Relation>& up)>;

struct scan_budget_error : std::runtime_error {
    std::uint64_t required_bits;  // log2 of the assignment count demanded
    std::uint64_t allowed;        // the assignment ceiling in force

    scan_budget_error(std::uint64_t bits, std::uint64_t allowed_)
        : std::runtime_error("exhaustive_scan: 2^" + std::to_string(bits) +
                             " assignments required, ceiling allows " +
                             std::to_string(allowed_)),
          required_bits(bits),
          allowed(allowed_) {}
};

inline constexpr std::uint64_t kDefaultScanCeiling = std::uint64_t{1} << 24;

namespace detail {

inline Representation build_representation(const FiniteAlgebra& algebra, int n,
                                           const std::vector<std::uint64_t>& rels) {
    std::vector<Relation> images;
    images.reserve(rels.size());
    for (std::uint64_t raw : rels) images.push_back(Relation::from_raw(n, raw));
    return make_representation(algebra, n, images);
}

inline std::uint64_t permute_raw(int n, std::uint64_t raw, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    while (raw) {
        int bit = std::countr_zero(raw);
        raw &= raw - 1;
        out |= std::uint64_t{1} << (perm[bit / n] * n + perm[bit % n]);
    }
    return out;
}

/// True when no relabeling of the base points makes the relation tuple
/// lexicographically smaller (element order first, raw masks as integers).
inline bool lex_min_in_orbit(int n, const std::vector<std::uint64_t>& rels) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t a = 0; a < rels.size(); ++a) {
            std::uint64_t mapped = permute_raw(n, rels[a], perm);
            if (mapped < rels[a]) return false;
            if (mapped > rels[a]) break;
        }
    }
    return true;
}

class Searcher {
public:
    Searcher(const FiniteAlgebra& algebra, int n, const SearchOptions& opt,
             const PruneHook& on_prune)
        : A_(algebra), n_(n), m_(algebra.size()), opt_(opt), on_prune_(on_prune) {}

    SearchOutcome run() {
        std::vector<std::uint64_t> lo(m_, 0);
        std::vector<std::uint64_t> up(m_, Relation::universe_mask(n_));
        dfs(std::move(lo), std::move(up));
        SearchOutcome out;
        out.nodes_explored = nodes_;
        if (found_) {
            out.kind = SearchOutcome::Kind::Found;
            out.representation = std::move(found_);
        } else if (limit_hit_) {
            out.kind = SearchOutcome::Kind::LimitReached;
        } else {
            out.kind = SearchOutcome::Kind::ExhaustedNone;
        }
        return out;
    }

private:
    const FiniteAlgebra& A_;
    int n_, m_;
    SearchOptions opt_;
    const PruneHook& on_prune_;
    std::uint64_t nodes_ = 0;
    bool limit_hit_ = false;
    std::optional<Representation> found_;

    void report_prune(const std::vector<std::uint64_t>& lo,
                      const std::vector<std::uint64_t>& up) const {
        if (!on_prune_) return;
        std::vector<Relation> lo_r, up_r;
        for (int a = 0; a < m_; ++a) {
            lo_r.push_back(Relation::from_raw(n_, lo[a]));
            up_r.push_back(Relation::from_raw(n_, up[a]));
        }
        on_prune_(lo_r, up_r);
    }

    // Tightens lo/up to a fixpoint of the table constraints; false means the
    // bounds admit no solution. Sound steps only: lo gains pairs every
    // solution must contain, up loses pairs no solution may contain.
    bool propagate(std::vector<std::uint64_t>& lo, std::vector<std::uint64_t>& up) const {
        const std::uint64_t row = Relation::row_mask(n_);
        bool changed = true;
        while (changed) {
            changed = false;
            auto tighten_lo = [&](int e, std::uint64_t add) {
                if ((lo[e] | add) != lo[e]) {
                    lo[e] |= add;
                    changed = true;
                }
            };
            auto tighten_up = [&](int e, std::uint64_t keep) {
                if ((up[e] & keep) != up[e]) {
                    up[e] &= keep;
                    changed = true;
                }
            };
            for (int a = 0; a < m_; ++a)
                for (int b = 0; b < m_; ++b) {
                    const int c = A_.comp_of(a, b);
                    tighten_lo(c, compose_raw(n_, lo[a], lo[b]));
                    tighten_up(c, compose_raw(n_, up[a], up[b]));
                    // (x,z) forced in a: b's z-row feeds only into c's x-row.
                    for (int x = 0; x < n_; ++x) {
                        std::uint64_t arow = (lo[a] >> (x * n_)) & row;
                        if (!arow) continue;
                        std::uint64_t crow = (up[c] >> (x * n_)) & row;
                        std::uint64_t banned = row & ~crow;
                        if (!banned) continue;
                        while (arow) {
                            int z = std::countr_zero(arow);
                            arow &= arow - 1;
                            tighten_up(b, ~(banned << (z * n_)));
                        }
                    }
                    // (z,y) forced in b: a may hold (x,z) only where c allows (x,y).
                    for (int z = 0; z < n_; ++z) {
                        std::uint64_t brow = (lo[b] >> (z * n_)) & row;
                        while (brow) {
                            int y = std::countr_zero(brow);
                            brow &= brow - 1;
                            std::uint64_t keep = ~std::uint64_t{0};
                            for (int x = 0; x < n_; ++x)
                                if (!((up[c] >> (x * n_ + y)) & 1))
                                    keep &= ~(std::uint64_t{1} << (x * n_ + z));
                            tighten_up(a, keep);
                        }
                    }
                    const int d = A_.meet_of(a, b);
                    tighten_lo(d, lo[a] & lo[b]);
                    tighten_up(d, up[a] & up[b]);
                    tighten_lo(a, lo[d]);
                    tighten_lo(b, lo[d]);
                    tighten_up(a, ~(lo[b] & ~up[d]));
                    tighten_up(b, ~(lo[a] & ~up[d]));
                }
            for (int e = 0; e < m_; ++e)
                if (lo[e] & ~up[e]) return false;
            for (int a = 0; a < m_; ++a)
                for (int b = a + 1; b < m_; ++b)
                    if (lo[a] == up[a] && lo[b] == up[b] && lo[a] == lo[b]) return false;
        }
        return true;
    }

    bool accept_leaf(const std::vector<std::uint64_t>& rels) {
        for (int a = 0; a < m_; ++a)
            for (int b = a + 1; b < m_; ++b)
                if (rels[a] == rels[b]) return false;
        for (int a = 0; a < m_; ++a)
            for (int b = 0; b < m_; ++b) {
                if (compose_raw(n_, rels[a], rels[b]) != rels[A_.comp_of(a, b)]) return false;
                if ((rels[a] & rels[b]) != rels[A_.meet_of(a, b)]) return false;
            }
        if (opt_.symmetry_pruning && !lex_min_in_orbit(n_, rels)) return false;
        Representation rep = build_representation(A_, n_, rels);
        if (!check_representation(rep).ok()) return false;
        found_ = std::move(rep);
        return true;
    }

    bool dfs(std::vector<std::uint64_t> lo, std::vector<std::uint64_t> up) {
        if (!propagate(lo, up)) {
            report_prune(lo, up);
            return false;
        }
        int elem = -1;
        for (int a = 0; a < m_; ++a)
            if (lo[a] != up[a]) {
                elem = a;
                break;
            }
        if (elem < 0) return accept_leaf(lo);
        const int bit = std::countr_zero(up[elem] & ~lo[elem]);
        const std::uint64_t mask = std::uint64_t{1} << bit;

        for (int value = 0; value < 2; ++value) {
            if (++nodes_ > opt_.node_limit) {
                limit_hit_ = true;
                return false;
            }
            auto lo2 = lo;
            auto up2 = up;
            if (value == 0)
                up2[elem] &= ~mask;
            else
                lo2[elem] |= mask;
            if (dfs(std::move(lo2), std::move(up2))) return true;
            if (limit_hit_) return false;
        }
        return false;
    }
};

}  // namespace detail

/// Depth-first decision search over the membership bits, lexicographic in
/// (element, x, y) with false tried first, bound propagation after every
/// decision. Deterministic: identical problems traverse identical trees.
inline SearchOutcome search(const SearchProblem& problem, const PruneHook& on_prune) {
    check_well_formed(problem.algebra);
    if (problem.base_size < 1 || problem.base_size > Relation::kMaxBase)
        throw std::invalid_argument("search: base_size out of range");
    if (problem.options.node_limit < 1)
        throw std::invalid_argument("search: node_limit must be >= 1");
    detail::Searcher s(problem.algebra, problem.base_size, problem.options, on_prune);
    return s.run();
}

inline SearchOutcome search(const SearchProblem& problem) { return search(problem, {}); }

/// Brute force over every assignment of relations to elements, element 0
/// varying fastest. Refuses when 2^(n^2 * m) exceeds the ceiling.
inline SearchOutcome exhaustive_scan(const FiniteAlgebra& algebra, int n,
                                     std::uint64_t ceiling = kDefaultScanCeiling) {
    check_well_formed(algebra);
    if (n < 1 || n > Relation::kMaxBase)
        throw std::invalid_argument("exhaustive_scan: base size out of range");
    const int m = algebra.size();
    const std::uint64_t bits = static_cast<std::uint64_t>(n) * n * m;
    if (bits >= 63 || (std::uint64_t{1} << bits) > ceiling)
        throw scan_budget_error(bits, ceiling);

    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::uint64_t universe = Relation::universe_mask(n);
    std::vector<std::uint64_t> rels(m);
    for (std::uint64_t k = 0; k < total; ++k) {
        for (int a = 0; a < m; ++a) rels[a] = (k >> (a * n * n)) & universe;
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = a + 1; b < m && ok; ++b)
                if (rels[a] == rels[b]) ok = false;
        for (int a = 0; a < m && ok; ++a)
            for (int b = 0; b < m && ok; ++b) {
                if (compose_raw(n, rels[a], rels[b]) != rels[algebra.comp_of(a, b)]) ok = false;
                if ((rels[a] & rels[b]) != rels[algebra.meet_of(a, b)]) ok = false;
            }
        if (ok) {
            SearchOutcome out;
            out.kind = SearchOutcome::Kind::Found;
            out.representation = detail::build_representation(algebra, n, rels);
            out.nodes_explored = k + 1;
            return out;
        }
    }
    SearchOutcome out;
    out.kind = SearchOutcome::Kind::ExhaustedNone;
    out.nodes_explored = total;
    return out;
}

struct NonRepReport {
    enum class Method { Exhaustive, SearchComplete };
    enum class Verdict { CertifiedNone, Representable, Inconclusive };

    struct SizeResult {
        int base_size;
        Method method;
        SearchOutcome outcome;
    };

    int max_base_size = 0;
    std::vector<SizeResult> sizes;
    Verdict verdict = Verdict::CertifiedNone;
};

inline const char* verdict_name(NonRepReport::Verdict v) {
    switch (v) {
        case NonRepReport::Verdict::CertifiedNone: return "certified-none";
        case NonRepReport::Verdict::Representable: return "representable";
        case NonRepReport::Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// Per-size decision record for 1..max_n: exhaustive enumeration where it
/// fits the ceiling, complete propagation search otherwise. The verdict is
/// certified-none only when every size reports exhausted-none; any
/// limit-reached size downgrades the verdict to inconclusive.
inline NonRepReport nonrep_certificate(const FiniteAlgebra& algebra, int max_n,
                                       const SearchOptions& options = {}) {
    if (max_n < 1) throw std::invalid_argument("nonrep_certificate: max_n must be >= 1");
    NonRepReport report;
    report.max_base_size = max_n;
    for (int n = 1; n <= max_n; ++n) {
        const std::uint64_t bits =
            static_cast<std::uint64_t>(n) * n * algebra.size();
        NonRepReport::SizeResult result{n, NonRepReport::Method::Exhaustive, {}};
        if (bits < 63 && (std::uint64_t{1} << bits) <= kDefaultScanCeiling) {
            result.outcome = exhaustive_scan(algebra, n);
        } else {
            result.method = NonRepReport::Method::SearchComplete;
            result.outcome = search(SearchProblem{algebra, n, options});
        }
        report.sizes.push_back(result);
        if (result.outcome.kind == SearchOutcome::Kind::Found) {
            report.verdict = NonRepReport::Verdict::Representable;
            return report;
        }
        if (result.outcome.kind == SearchOutcome::Kind::LimitReached)
            report.verdict = NonRepReport::Verdict::Inconclusive;
    }
    return report;
}

}  // namespace relrep
