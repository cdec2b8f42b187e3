#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "relrep/algfile.hpp"
#include "relrep/qorder.hpp"
#include "support/oracles.hpp"

using relrep::FiniteAlgebra;
using relrep::parse_error;
using relrep::Relation;

namespace {

const std::string kPointText =
    "elements: z e r\n"
    "table comp:\n"
    "z z z\n"
    "z e r\n"
    "z r r\n"
    "table meet:\n"
    "z z z\n"
    "z e z\n"
    "z z r\n";

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

template <class Fn>
parse_error capture(Fn&& fn) {
    try {
        fn();
    } catch (const parse_error& e) {
        return e;
    }
    FAIL("expected a parse_error");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("the canonical text parses to the point algebra") {
    auto file = relrep::parse_algebra(kPointText);
    REQUIRE(file.algebra == relrep::point_algebra());
    REQUIRE(file.elements_line == 1);
    REQUIRE(file.comp_row_lines == std::vector<int>{3, 4, 5});
    REQUIRE(file.meet_row_lines == std::vector<int>{7, 8, 9});
}

TEST_CASE("comments, blank lines, crlf, and spacing are tolerated") {
    std::string noisy =
        "# the three-element algebra\r\n"
        "\r\n"
        "elements:   z  e   r   # index order\n"
        "table meet:\n"
        "z z z\n"
        "  z   e z\n"
        "z z r # last row\n"
        "\n"
        "table comp:\n"
        "z z z\n"
        "z e r\n"
        "z r r\n";
    auto file = relrep::parse_algebra(noisy);
    REQUIRE(file.algebra == relrep::point_algebra());
    REQUIRE(file.elements_line == 3);
    REQUIRE(file.meet_row_lines == std::vector<int>{5, 6, 7});
}

TEST_CASE("parse errors carry position and message") {
    auto e = capture([] { relrep::parse_algebra(""); });
    REQUIRE(std::string(e.what()) == "line 1, col 1: elements: line absent");

    e = capture([] { relrep::parse_algebra("banana: z\n"); });
    REQUIRE(e.line == 1);
    REQUIRE(std::string(e.what()).find("expected 'elements:'") != std::string::npos);

    e = capture([] { relrep::parse_algebra("elements:\n"); });
    REQUIRE(std::string(e.what()).find("no element names given") != std::string::npos);

    e = capture([] { relrep::parse_algebra("elements: a a\n"); });
    REQUIRE(e.line == 1);
    REQUIRE(e.column == 13);
    REQUIRE(std::string(e.what()).find("duplicate element name 'a'") != std::string::npos);

    e = capture([] { relrep::parse_algebra("elements: a b:\n"); });
    REQUIRE(std::string(e.what()).find("may not contain ':'") != std::string::npos);
}

TEST_CASE("table shape errors name the offending line") {
    auto e = capture([] {
        relrep::parse_algebra("elements: a\ntable comp:\na q\n");
    });
    REQUIRE(e.line == 3);
    REQUIRE(std::string(e.what()).find("row of 2 entries, 1 expected") != std::string::npos);

    e = capture([] {
        relrep::parse_algebra("elements: a b\ntable comp:\na q\nb a\n");
    });
    REQUIRE(e.line == 3);
    REQUIRE(std::string(e.what()).find("unknown element name 'q'") != std::string::npos);

    e = capture([] {
        relrep::parse_algebra("elements: a b\ntable comp:\na a\n");
    });
    REQUIRE(std::string(e.what()).find("only 1 of 2 rows present") != std::string::npos);

    e = capture([] {
        relrep::parse_algebra(
            "elements: a\ntable comp:\na\ntable comp:\na\ntable meet:\na\n");
    });
    REQUIRE(std::string(e.what()).find("duplicate section 'table comp:'") !=
            std::string::npos);

    e = capture([] { relrep::parse_algebra("elements: a\ntable comp:\na\n"); });
    REQUIRE(std::string(e.what()).find("table meet: absent") != std::string::npos);

    e = capture([] { relrep::parse_algebra("elements: a\ngarbage here\n"); });
    REQUIRE(e.line == 2);
    REQUIRE(std::string(e.what()).find("unexpected content 'garbage'") != std::string::npos);
}

TEST_CASE("sections parse in either order") {
    std::string meet_first =
        "elements: z e r\n"
        "table meet:\nz z z\nz e z\nz z r\n"
        "table comp:\nz z z\nz e r\nz r r\n";
    REQUIRE(relrep::parse_algebra(meet_first).algebra == relrep::point_algebra());
}

TEST_CASE("printing is canonical and parsing inverts it") {
    REQUIRE(relrep::print_algebra(relrep::point_algebra()) == kPointText);

    std::mt19937_64 rng(61616);
    for (int trial = 0; trial < 25; ++trial) {
        auto alg = oracle::random_algebra(rng, 1 + static_cast<int>(rng() % 4));
        auto round = relrep::parse_algebra(relrep::print_algebra(alg));
        REQUIRE(round.algebra == alg);
    }
}

TEST_CASE("the shipped data files parse") {
    auto point = relrep::parse_algebra(slurp(std::string(RELREP_DATA_DIR) +
                                             "/point_algebra.alg"));
    REQUIRE(point.algebra == relrep::point_algebra());

    auto ze = relrep::parse_algebra(slurp(std::string(RELREP_DATA_DIR) + "/ze.alg"));
    REQUIRE(ze.algebra.elements == std::vector<std::string>{"z", "e"});
    REQUIRE(ze.algebra.comp == std::vector<std::vector<int>>{{0, 0}, {0, 1}});

    auto seed = relrep::parse_model_file(
        slurp(std::string(RELREP_DATA_DIR) + "/lt_seed.model"));
    REQUIRE(seed.base_size == 2);
    REQUIRE(seed.relations.size() == 1);
    REQUIRE(seed.relations[0].name == "lt");
    REQUIRE(seed.relations[0].rel == Relation(2, {{0, 1}}));

    auto triple_file = relrep::parse_model_file(
        slurp(std::string(RELREP_DATA_DIR) + "/rr_fails.model"));
    auto triple = relrep::triple_from_model_file(triple_file);
    REQUIRE(triple.r == Relation(2, {{0, 1}}));
}

TEST_CASE("model files parse sections and pairs") {
    auto file = relrep::parse_model_file(
        "# two relations over a 3-point base\n"
        "base 3\n"
        "rel a:\n"
        "0 1\n"
        "1 2  # a comment\n"
        "rel b:\n");
    REQUIRE(file.base_size == 3);
    REQUIRE(file.relations.size() == 2);
    REQUIRE(file.relations[0].rel == Relation(3, {{0, 1}, {1, 2}}));
    REQUIRE(file.relations[1].rel == Relation(3));
}

TEST_CASE("model file errors name their cause") {
    auto e = capture([] { relrep::parse_model_file(""); });
    REQUIRE(std::string(e.what()).find("base line absent") != std::string::npos);

    e = capture([] { relrep::parse_model_file("rel a:\n"); });
    REQUIRE(std::string(e.what()).find("expected 'base <n>'") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base two\n"); });
    REQUIRE(std::string(e.what()).find("base size expected, got 'two'") !=
            std::string::npos);

    e = capture([] { relrep::parse_model_file("base 9\n"); });
    REQUIRE(std::string(e.what()).find("between 1 and 8") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\n0 1\n"); });
    REQUIRE(std::string(e.what()).find("before any 'rel <name>:'") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\nrel a\n"); });
    REQUIRE(std::string(e.what()).find("expected 'rel <name>:'") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\nrel :\n"); });
    REQUIRE(std::string(e.what()).find("empty relation name") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\nrel a:\nrel a:\n"); });
    REQUIRE(std::string(e.what()).find("duplicate relation 'a'") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\nrel a:\n0 1 2\n"); });
    REQUIRE(std::string(e.what()).find("expected 'x y' pair line") != std::string::npos);

    e = capture([] { relrep::parse_model_file("base 2\nrel a:\n0 2\n"); });
    REQUIRE(e.line == 3);
    REQUIRE(std::string(e.what()).find("coordinate 2 outside base") != std::string::npos);
}

TEST_CASE("a model file must supply z, e, and r exactly") {
    auto good = relrep::parse_model_file(
        "base 1\nrel z:\nrel e:\n0 0\nrel r:\n0 0\n");
    auto triple = relrep::triple_from_model_file(good);
    REQUIRE(triple.z == Relation(1));
    REQUIRE(triple.e == Relation(1, {{0, 0}}));
    REQUIRE(triple.r == Relation(1, {{0, 0}}));

    auto missing = relrep::parse_model_file("base 1\nrel z:\nrel e:\n");
    REQUIRE_THROWS_MATCHES(relrep::triple_from_model_file(missing), std::invalid_argument,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("must all be present")));

    auto extra = relrep::parse_model_file(
        "base 1\nrel z:\nrel e:\nrel r:\nrel q:\n");
    REQUIRE_THROWS_MATCHES(relrep::triple_from_model_file(extra), std::invalid_argument,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("unexpected relation 'q'")));
}
