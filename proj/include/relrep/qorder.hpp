#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "relrep/algebra.hpp"
#include "relrep/errors.hpp"
#include "relrep/rational.hpp"

namespace relrep {

/// The three basic relations on the rationals: x<y, x=y, x>y. They are
/// pairwise disjoint and partition Q x Q.
enum class Basic : unsigned { LT = 1, EQ = 2, GT = 4 };

/// A union of basic relations, i.e. one of the 8 relations over Q definable
/// from the order alone. The point algebra names the empty set z, {EQ} e,
/// and {LT} r.
class BasisSet {
public:
    constexpr BasisSet() : mask_(0) {}
    explicit constexpr BasisSet(unsigned mask) : mask_(mask & 7u) {}

    static constexpr BasisSet none() { return BasisSet(0); }
    static constexpr BasisSet lt() { return BasisSet(1); }
    static constexpr BasisSet eq() { return BasisSet(2); }
    static constexpr BasisSet gt() { return BasisSet(4); }
    static constexpr BasisSet all() { return BasisSet(7); }

    constexpr unsigned mask() const { return mask_; }
    constexpr bool contains(Basic b) const { return mask_ & static_cast<unsigned>(b); }
    constexpr bool is_empty() const { return mask_ == 0; }

    friend constexpr BasisSet operator|(BasisSet a, BasisSet b) {
        return BasisSet(a.mask_ | b.mask_);
    }
    friend constexpr BasisSet operator&(BasisSet a, BasisSet b) {
        return BasisSet(a.mask_ & b.mask_);
    }
    friend constexpr bool operator==(BasisSet, BasisSet) = default;

    /// "{}", "{LT}", "{LT,EQ}", ...
    std::string to_string() const {
        std::string out = "{";
        const char* names[] = {"LT", "EQ", "GT"};
        bool first = true;
        for (int i = 0; i < 3; ++i)
            if (mask_ & (1u << i)) {
                if (!first) out += ',';
                out += names[i];
                first = false;
            }
        return out + "}";
    }

private:
    unsigned mask_;
};

inline Basic order_class(const Rational& x, const Rational& y) {
    // One cross multiplication; canonical denominators are positive, so the
    // products order the same way the quotients do. Chain verification does
    // millions of these on kilobit operands.
    boost::multiprecision::cpp_int lhs = numerator(x) * denominator(y);
    boost::multiprecision::cpp_int rhs = numerator(y) * denominator(x);
    int c = lhs.compare(rhs);
    if (c < 0) return Basic::LT;
    if (c == 0) return Basic::EQ;
    return Basic::GT;
}

/// (x,y) lies in the union denoted by a iff its comparison class does;
/// the empty and full unions need no comparison.
inline bool member(const Rational& x, const Rational& y, BasisSet a) {
    if (a.is_empty()) return false;
    if (a == BasisSet::all()) return true;
    return a.contains(order_class(x, y));
}

/// Composition of single basic relations over Q. The two mixed cells
/// LT;GT and GT;LT come out as the full relation: they need a point above
/// (respectively below) both arguments, so they rely on Q being unbounded,
/// not just dense. Every other cell follows from density alone.
inline constexpr BasisSet basic_compose(Basic p, Basic q) {
    if (p == Basic::EQ) return BasisSet(static_cast<unsigned>(q));
    if (q == Basic::EQ) return BasisSet(static_cast<unsigned>(p));
    if (p == q) return BasisSet(static_cast<unsigned>(p));
    return BasisSet::all();
}

/// Composition distributes over union, so the composite of two unions of
/// basic relations is the union of the basic composites.
inline constexpr BasisSet compose_symbolic(BasisSet a, BasisSet b) {
    BasisSet out;
    for (Basic p : {Basic::LT, Basic::EQ, Basic::GT}) {
        if (!a.contains(p)) continue;
        for (Basic q : {Basic::LT, Basic::EQ, Basic::GT})
            if (b.contains(q)) out = out | basic_compose(p, q);
    }
    return out;
}

/// Basic relations are pairwise disjoint, so intersection of unions is
/// intersection of the basis subsets.
inline constexpr BasisSet intersect_symbolic(BasisSet a, BasisSet b) { return a & b; }

inline std::array<std::array<BasisSet, 8>, 8> composition_table() {
    std::array<std::array<BasisSet, 8>, 8> table{};
    for (unsigned a = 0; a < 8; ++a)
        for (unsigned b = 0; b < 8; ++b)
            table[a][b] = compose_symbolic(BasisSet(a), BasisSet(b));
    return table;
}

/// Constructive form of the existential in the composition display: a point
/// z with (x,z) in a and (z,y) in b, when one exists. Candidates are scanned
/// in a fixed order (midpoint, then either endpoint, then an offset past
/// max or min for the unbounded cases) and validated by member checks only,
/// so the result is independent of the symbolic tables. The candidate list
/// is exhaustive: some candidate succeeds whenever any witness exists.
inline std::optional<Rational> witness(const Rational& x, const Rational& y,
                                       BasisSet a, BasisSet b) {
    const Rational candidates[] = {
        midpoint(x, y),
        x,
        y,
        (x < y ? y : x) + 1,
        (x < y ? x : y) - 1,
    };
    for (const Rational& z : candidates)
        if (member(x, z, a) && member(z, y, b)) return z;
    return std::nullopt;
}

/// The three-element point algebra {z, e, r}: the empty relation, equality,
/// and strict order over Q. Tables are computed from the symbolic operations;
/// the three relations are closed under both.
inline FiniteAlgebra point_algebra() {
    const std::array<BasisSet, 3> elems = {BasisSet::none(), BasisSet::eq(), BasisSet::lt()};
    auto index_of = [&](BasisSet s) {
        for (int i = 0; i < 3; ++i)
            if (elems[i] == s) return i;
        throw integrity_error("point_algebra: {z,e,r} not closed");
    };
    FiniteAlgebra alg;
    alg.elements = {"z", "e", "r"};
    alg.comp.assign(3, std::vector<int>(3, 0));
    alg.meet.assign(3, std::vector<int>(3, 0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            alg.comp[i][j] = index_of(compose_symbolic(elems[i], elems[j]));
            alg.meet[i][j] = index_of(intersect_symbolic(elems[i], elems[j]));
        }
    return alg;
}

struct TableDiscrepancy {
    BasisSet a;
    BasisSet b;
    Rational x;
    Rational y;
    std::string detail;
};

struct TableCheck {
    std::optional<TableDiscrepancy> discrepancy;
    bool ok() const { return !discrepancy.has_value(); }
};

/// Seeded generator of exact rationals with numerators and denominators
/// bounded by 10^6. Exactness makes the sample count a coverage knob.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    Rational next() {
        std::uniform_int_distribution<long> num(-1000000, 1000000);
        std::uniform_int_distribution<long> den(1, 1000000);
        return Rational(num(rng_), den(rng_));
    }

private:
    std::mt19937_64 rng_;
};

/// Checks a claimed 8x8 composition table, cell by cell, against sampled
/// pairs: a comparison class inside the claimed composite must admit a
/// validated witness; a class outside must admit none among the exhaustive
/// candidate scan. Every third sample pins y = x so the EQ class is covered.
inline TableCheck verify_composition_table(
    const std::array<std::array<BasisSet, 8>, 8>& claimed, int sample_count,
    std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("verify_composition_table: sample_count must be >= 1");
    for (unsigned am = 0; am < 8; ++am)
        for (unsigned bm = 0; bm < 8; ++bm) {
            const BasisSet a(am), b(bm);
            RationalSampler sampler(seed ^ (am * 8 + bm) * 0x9e3779b97f4a7c15ull);
            for (int s = 0; s < sample_count; ++s) {
                Rational x = sampler.next();
                Rational y = (s % 3 == 2) ? x : sampler.next();
                const bool claimed_in = member(x, y, claimed[am][bm]);
                auto w = witness(x, y, a, b);
                if (claimed_in && !w)
                    return {TableDiscrepancy{a, b, x, y,
                                             "claimed composite admits no witness"}};
                if (w && (!member(x, *w, a) || !member(*w, y, b)))
                    return {TableDiscrepancy{a, b, x, y, "witness fails member checks"}};
                if (!claimed_in && w)
                    return {TableDiscrepancy{a, b, x, y,
                                             "witnessed pair missing from claimed composite"}};
            }
        }
    return {};
}

/// Soundness and completeness of the symbolic composition table itself.
inline TableCheck verify_tables(int sample_count, std::uint64_t seed) {
    return verify_composition_table(composition_table(), sample_count, seed);
}

}  // namespace relrep
