#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relrep {

/// An abstract finite algebra (A, ;, .): element names in index order and
/// two m x m operation tables holding element indices. The shape (totality,
/// index range, distinct names) is enforced by check_well_formed; semantic
/// laws are the business of necessary_laws.
struct FiniteAlgebra {
    std::vector<std::string> elements;
    std::vector<std::vector<int>> comp;
    std::vector<std::vector<int>> meet;

    int size() const { return static_cast<int>(elements.size()); }
    int comp_of(int a, int b) const { return comp[a][b]; }
    int meet_of(int a, int b) const { return meet[a][b]; }

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;
};

inline void check_well_formed(const FiniteAlgebra& alg) {
    const int m = alg.size();
    if (m == 0) throw std::invalid_argument("algebra: no elements");
    for (const auto& name : alg.elements)
        if (name.empty()) throw std::invalid_argument("algebra: empty element name");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (alg.elements[i] == alg.elements[j])
                throw std::invalid_argument("algebra: duplicate element name '" +
                                            alg.elements[i] + "'");
    for (const auto* table : {&alg.comp, &alg.meet}) {
        if (static_cast<int>(table->size()) != m)
            throw std::invalid_argument("algebra: table is not m x m");
        for (const auto& row : *table) {
            if (static_cast<int>(row.size()) != m)
                throw std::invalid_argument("algebra: table row of wrong arity");
            for (int v : row)
                if (v < 0 || v >= m)
                    throw std::invalid_argument("algebra: table entry out of range");
        }
    }
}

/// Laws that hold in every algebra of binary relations under composition
/// and intersection. Violations make representability hopeless; the search
/// does not rely on this filter for soundness.
enum class Law {
    CompAssociative,
    MeetCommutative,
    MeetAssociative,
    MeetIdempotent,
    CompMonotone,
};

inline const char* law_name(Law law) {
    switch (law) {
        case Law::CompAssociative: return "comp associative";
        case Law::MeetCommutative: return "meet commutative";
        case Law::MeetAssociative: return "meet associative";
        case Law::MeetIdempotent: return "meet idempotent";
        case Law::CompMonotone: return "comp monotone";
    }
    return "?";
}

struct LawViolation {
    Law law;
    std::vector<int> witness;  // element indices, in the law's quantifier order

    friend bool operator==(const LawViolation&, const LawViolation&) = default;
};

inline std::vector<LawViolation> necessary_laws(const FiniteAlgebra& alg) {
    const int m = alg.size();
    std::vector<LawViolation> out;
    auto leq = [&](int a, int b) { return alg.meet_of(a, b) == a; };

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                if (alg.comp_of(alg.comp_of(a, b), c) != alg.comp_of(a, alg.comp_of(b, c)))
                    out.push_back({Law::CompAssociative, {a, b, c}});
                if (alg.meet_of(alg.meet_of(a, b), c) != alg.meet_of(a, alg.meet_of(b, c)))
                    out.push_back({Law::MeetAssociative, {a, b, c}});
            }
    for (int a = 0; a < m; ++a) {
        if (alg.meet_of(a, a) != a) out.push_back({Law::MeetIdempotent, {a}});
        for (int b = 0; b < m; ++b)
            if (alg.meet_of(a, b) != alg.meet_of(b, a))
                out.push_back({Law::MeetCommutative, {a, b}});
    }
    // a <= b implies a;c <= b;c and c;a <= c;b.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!leq(a, b)) continue;
            for (int c = 0; c < m; ++c) {
                if (!leq(alg.comp_of(a, c), alg.comp_of(b, c)) ||
                    !leq(alg.comp_of(c, a), alg.comp_of(c, b)))
                    out.push_back({Law::CompMonotone, {a, b, c}});
            }
        }
    return out;
}

/// Brute force over index permutations; returns the first (lexicographically
/// smallest) bijection commuting with both tables, if any. Intended for the
/// small algebras this library works with (m up to ~8).
inline std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                        const FiniteAlgebra& b) {
    if (a.size() != b.size()) return std::nullopt;
    const int m = a.size();
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = 0; j < m && ok; ++j)
                ok = perm[a.comp_of(i, j)] == b.comp_of(perm[i], perm[j]) &&
                     perm[a.meet_of(i, j)] == b.meet_of(perm[i], perm[j]);
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

}  // namespace relrep
