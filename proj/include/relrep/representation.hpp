#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relrep/algebra.hpp"
#include "relrep/model.hpp"

namespace relrep {

/// An injective map from algebra elements to model members that is claimed
/// to preserve both operations. check_representation verifies the claim.
struct Representation {
    FiniteAlgebra algebra;
    ConcreteModel model;
    std::vector<int> assignment;  // element index -> member index
};

struct RepFailure {
    enum class Kind { Injectivity, Composition, Meet } kind;
    int a;
    int b;
    // For operation failures: the member the table demands and the relation
    // the model actually produces. Unused for injectivity collisions.
    int expected_member = -1;
    std::optional<Relation> actual;
};

/// Failures are data, not errors: OK is an empty failure list.
struct RepReport {
    std::vector<RepFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Packages per-element image relations as a Representation over the model
/// of their distinct values, keeping element names on first occurrence.
inline Representation make_representation(const FiniteAlgebra& algebra, int base_size,
                                          const std::vector<Relation>& images) {
    if (static_cast<int>(images.size()) != algebra.size())
        throw std::invalid_argument("make_representation: one image per element required");
    ConcreteModel model;
    model.base_size = base_size;
    std::vector<int> assignment(images.size());
    for (int a = 0; a < static_cast<int>(images.size()); ++a) {
        if (auto idx = model.index_of(images[a])) {
            assignment[a] = *idx;
        } else {
            model.members.push_back({algebra.elements[a], images[a]});
            assignment[a] = model.size() - 1;
        }
    }
    return Representation{algebra, std::move(model), std::move(assignment)};
}

inline RepReport check_representation(const Representation& rep) {
    const int m = rep.algebra.size();
    if (static_cast<int>(rep.assignment.size()) != m)
        throw std::invalid_argument("check_representation: assignment not total");
    for (int i : rep.assignment)
        if (i < 0 || i >= rep.model.size())
            throw std::invalid_argument("check_representation: assignment out of range");

    RepReport report;
    auto image = [&](int elem) -> const Relation& {
        return rep.model.members[rep.assignment[elem]].rel;
    };
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (rep.assignment[a] == rep.assignment[b])
                report.failures.push_back({RepFailure::Kind::Injectivity, a, b, -1, {}});
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            Relation c = compose(image(a), image(b));
            int want = rep.assignment[rep.algebra.comp_of(a, b)];
            if (c != rep.model.members[want].rel)
                report.failures.push_back({RepFailure::Kind::Composition, a, b, want, c});
            Relation w = intersect(image(a), image(b));
            int want_meet = rep.assignment[rep.algebra.meet_of(a, b)];
            if (w != rep.model.members[want_meet].rel)
                report.failures.push_back({RepFailure::Kind::Meet, a, b, want_meet, w});
        }
    return report;
}

}  // namespace relrep
