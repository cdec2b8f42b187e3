#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <optional>
#include <random>

#include "relrep/qorder.hpp"
#include "relrep/search.hpp"
#include "support/oracles.hpp"

using relrep::FiniteAlgebra;
using relrep::NonRepReport;
using relrep::Relation;
using relrep::SearchOutcome;
using relrep::SearchProblem;

namespace {

FiniteAlgebra ze_algebra() {
    FiniteAlgebra alg;
    alg.elements = {"z", "e"};
    alg.comp = {{0, 0}, {0, 1}};
    alg.meet = {{0, 0}, {0, 1}};
    return alg;
}

/// Brute validity check shared by the instrumentation tests: distinct
/// relations whose raw composites and intersections follow the tables.
bool valid_assignment(const FiniteAlgebra& alg, int n, const std::vector<std::uint64_t>& rels) {
    const int m = alg.size();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (rels[a] == rels[b]) return false;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (relrep::compose_raw(n, rels[a], rels[b]) != rels[alg.comp_of(a, b)]) return false;
            if ((rels[a] & rels[b]) != rels[alg.meet_of(a, b)]) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("the point algebra has no model on one or two points") {
    auto alg = relrep::point_algebra();

    auto scan1 = relrep::exhaustive_scan(alg, 1);
    REQUIRE(scan1.kind == SearchOutcome::Kind::ExhaustedNone);
    REQUIRE(scan1.nodes_explored == 8);

    auto scan2 = relrep::exhaustive_scan(alg, 2);
    REQUIRE(scan2.kind == SearchOutcome::Kind::ExhaustedNone);
    REQUIRE(scan2.nodes_explored == 4096);

    for (int n = 1; n <= 2; ++n) {
        auto out = relrep::search(SearchProblem{alg, n, {}});
        REQUIRE(out.kind == SearchOutcome::Kind::ExhaustedNone);
        REQUIRE_FALSE(out.representation.has_value());
    }
}

TEST_CASE("the two-element algebra is found on a single point") {
    auto out = relrep::search(SearchProblem{ze_algebra(), 1, {}});
    REQUIRE(out.kind == SearchOutcome::Kind::Found);
    REQUIRE(out.representation.has_value());
    const auto& rep = *out.representation;
    REQUIRE(rep.model.members[rep.assignment[0]].rel == Relation(1));
    REQUIRE(rep.model.members[rep.assignment[1]].rel == Relation(1, {{0, 0}}));
    REQUIRE(relrep::check_representation(rep).ok());

    auto scan = relrep::exhaustive_scan(ze_algebra(), 1);
    REQUIRE(scan.kind == SearchOutcome::Kind::Found);
    REQUIRE(scan.nodes_explored == 3);  // element 0 varies fastest
    REQUIRE(relrep::check_representation(*scan.representation).ok());
}

TEST_CASE("the scan refuses budgets past its ceiling") {
    auto alg = relrep::point_algebra();
    try {
        relrep::exhaustive_scan(alg, 3);
        FAIL("expected scan_budget_error");
    } catch (const relrep::scan_budget_error& e) {
        REQUIRE(e.required_bits == 27);
        REQUIRE(e.allowed == (std::uint64_t{1} << 24));
        REQUIRE(std::string(e.what()).find("2^27") != std::string::npos);
    }
    // past 63 bits the count itself would overflow; still a budget error
    REQUIRE_THROWS_AS(relrep::exhaustive_scan(alg, 8), relrep::scan_budget_error);
    REQUIRE_NOTHROW(relrep::exhaustive_scan(alg, 2, 4096));
    REQUIRE_THROWS_AS(relrep::exhaustive_scan(alg, 2, 4095), relrep::scan_budget_error);
}

TEST_CASE("search agrees with exhaustive enumeration on a random corpus") {
    std::mt19937_64 rng(70707);
    int found = 0, exhausted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int m = 1 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 2);
        auto alg = oracle::random_algebra(rng, m);
        auto scanned = relrep::exhaustive_scan(alg, n);
        auto searched = relrep::search(SearchProblem{alg, n, {}});
        REQUIRE(scanned.kind == searched.kind);
        if (searched.kind == SearchOutcome::Kind::Found) {
            ++found;
            REQUIRE(relrep::check_representation(*searched.representation).ok());
            REQUIRE(relrep::check_representation(*scanned.representation).ok());
        } else {
            ++exhausted;
        }
    }
    // the corpus must exercise both outcomes to mean anything
    REQUIRE(found > 0);
    REQUIRE(exhausted > 0);
}

TEST_CASE("tables extracted from a closure are always found representable") {
    std::mt19937_64 rng(70708);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 15; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<relrep::NamedRelation> seeds{
            {"a", oracle::random_sparse_relation(rng, n, 0.3)}};
        auto model = relrep::generate_closure(seeds);
        if (model.size() > 8) continue;
        auto alg = relrep::extract_tables(model);
        auto out = relrep::search(SearchProblem{alg, n, {}});
        REQUIRE(out.kind == SearchOutcome::Kind::Found);
        REQUIRE(relrep::check_representation(*out.representation).ok());
        ++checked;
    }
    REQUIRE(checked >= 10);
}

TEST_CASE("pruned subtrees contain no valid assignment") {
    auto alg = relrep::point_algebra();
    const int n = 2;
    int verified = 0, nonempty_bounds = 0;
    relrep::PruneHook hook = [&](const std::vector<Relation>& lo,
                                 const std::vector<Relation>& up) {
        std::vector<std::uint64_t> base(alg.size());
        std::vector<std::pair<int, std::uint64_t>> free_bits;
        for (int a = 0; a < alg.size(); ++a) {
            // lo outside up means the bound set is empty, nothing to check
            if (lo[a].raw() & ~up[a].raw()) return;
            base[a] = lo[a].raw();
            std::uint64_t open = up[a].raw() & ~lo[a].raw();
            while (open) {
                int bit = std::countr_zero(open);
                open &= open - 1;
                free_bits.push_back({a, std::uint64_t{1} << bit});
            }
        }
        if (free_bits.size() > 14) return;
        ++nonempty_bounds;
        for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << free_bits.size());
             ++combo) {
            auto rels = base;
            for (std::size_t i = 0; i < free_bits.size(); ++i)
                if ((combo >> i) & 1) rels[free_bits[i].first] |= free_bits[i].second;
            if (valid_assignment(alg, n, rels)) {
                FAIL("a pruned bound admits a valid assignment");
            }
        }
        ++verified;
    };
    auto out = relrep::search(SearchProblem{alg, n, {}}, hook);
    REQUIRE(out.kind == SearchOutcome::Kind::ExhaustedNone);
    REQUIRE(nonempty_bounds > 0);
    REQUIRE(verified == nonempty_bounds);
}

TEST_CASE("the per-size report certifies the point algebra up to two points") {
    auto report = relrep::nonrep_certificate(relrep::point_algebra(), 2);
    REQUIRE(report.verdict == NonRepReport::Verdict::CertifiedNone);
    REQUIRE(report.max_base_size == 2);
    REQUIRE(report.sizes.size() == 2);
    REQUIRE(report.sizes[0].base_size == 1);
    REQUIRE(report.sizes[0].method == NonRepReport::Method::Exhaustive);
    REQUIRE(report.sizes[0].outcome.nodes_explored == 8);
    REQUIRE(report.sizes[1].method == NonRepReport::Method::Exhaustive);
    REQUIRE(report.sizes[1].outcome.nodes_explored == 4096);
    REQUIRE(std::string(relrep::verdict_name(report.verdict)) == "certified-none");
}

TEST_CASE("the per-size report switches to search when the scan budget runs out") {
    auto report = relrep::nonrep_certificate(relrep::point_algebra(), 3);
    REQUIRE(report.verdict == NonRepReport::Verdict::CertifiedNone);
    REQUIRE(report.sizes.size() == 3);
    REQUIRE(report.sizes[2].method == NonRepReport::Method::SearchComplete);
    REQUIRE(report.sizes[2].outcome.kind == SearchOutcome::Kind::ExhaustedNone);
}

TEST_CASE("the per-size report stops early on a representable algebra") {
    auto report = relrep::nonrep_certificate(ze_algebra(), 3);
    REQUIRE(report.verdict == NonRepReport::Verdict::Representable);
    REQUIRE(report.sizes.size() == 1);
    REQUIRE(report.sizes[0].outcome.kind == SearchOutcome::Kind::Found);
}

TEST_CASE("a node limit downgrades the verdict to inconclusive") {
    relrep::SearchOptions tight;
    tight.node_limit = 1;
    auto out = relrep::search(SearchProblem{relrep::point_algebra(), 2, tight});
    REQUIRE(out.kind == SearchOutcome::Kind::LimitReached);

    auto report = relrep::nonrep_certificate(relrep::point_algebra(), 3, tight);
    REQUIRE(report.verdict == NonRepReport::Verdict::Inconclusive);
    REQUIRE(report.sizes[2].outcome.kind == SearchOutcome::Kind::LimitReached);
    REQUIRE(std::string(relrep::outcome_name(report.sizes[2].outcome.kind)) ==
            "limit-reached");
}

TEST_CASE("symmetry pruning changes node counts, never verdicts") {
    relrep::SearchOptions sym;
    sym.symmetry_pruning = true;

    auto out = relrep::search(SearchProblem{relrep::point_algebra(), 2, sym});
    REQUIRE(out.kind == SearchOutcome::Kind::ExhaustedNone);

    auto found = relrep::search(SearchProblem{ze_algebra(), 1, sym});
    REQUIRE(found.kind == SearchOutcome::Kind::Found);
    REQUIRE(relrep::check_representation(*found.representation).ok());

    std::mt19937_64 rng(70709);
    for (int trial = 0; trial < 25; ++trial) {
        auto alg = oracle::random_algebra(rng, 1 + static_cast<int>(rng() % 3));
        int n = 1 + static_cast<int>(rng() % 2);
        auto plain = relrep::search(SearchProblem{alg, n, {}});
        auto pruned = relrep::search(SearchProblem{alg, n, sym});
        REQUIRE(plain.kind == pruned.kind);
    }
}

TEST_CASE("identical problems traverse identical trees") {
    auto alg = relrep::point_algebra();
    auto first = relrep::search(SearchProblem{alg, 3, {}});
    auto second = relrep::search(SearchProblem{alg, 3, {}});
    REQUIRE(first.kind == SearchOutcome::Kind::ExhaustedNone);
    REQUIRE(first.nodes_explored == second.nodes_explored);
    REQUIRE(first.nodes_explored > 0);
}

TEST_CASE("search validates its inputs") {
    auto alg = relrep::point_algebra();
    REQUIRE_THROWS_AS(relrep::search(SearchProblem{alg, 0, {}}), std::invalid_argument);
    REQUIRE_THROWS_AS(relrep::search(SearchProblem{alg, 9, {}}), std::invalid_argument);
    relrep::SearchOptions zero;
    zero.node_limit = 0;
    REQUIRE_THROWS_AS(relrep::search(SearchProblem{alg, 1, zero}), std::invalid_argument);
    FiniteAlgebra ragged = alg;
    ragged.comp[1].pop_back();
    REQUIRE_THROWS_AS(relrep::search(SearchProblem{ragged, 1, {}}), std::invalid_argument);
    REQUIRE_THROWS_AS(relrep::nonrep_certificate(alg, 0), std::invalid_argument);
}
