#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "relrep/algebra.hpp"
#include "relrep/errors.hpp"
#include "relrep/relation.hpp"

namespace relrep {

struct NamedRelation {
    std::string name;
    Relation rel;
};

/// A set of named relations over one base, intended to be closed under
/// composition and intersection. Members are duplicate-free.
struct ConcreteModel {
    int base_size = 1;
    std::vector<NamedRelation> members;

    int size() const { return static_cast<int>(members.size()); }

    std::optional<int> index_of(const Relation& rel) const {
        for (int i = 0; i < size(); ++i)
            if (members[i].rel == rel) return i;
        return std::nullopt;
    }
};

struct ClosureDefect {
    enum class Op { Compose, Intersect } op;
    int lhs;
    int rhs;
    Relation result;
};

/// First (i, j, op) pair, in the deterministic sweep order, whose result is
/// not a member; nullopt when the model is closed.
inline std::optional<ClosureDefect> find_closure_defect(const ConcreteModel& model) {
    for (int i = 0; i < model.size(); ++i)
        for (int j = 0; j < model.size(); ++j) {
            Relation c = compose(model.members[i].rel, model.members[j].rel);
            if (!model.index_of(c))
                return ClosureDefect{ClosureDefect::Op::Compose, i, j, c};
            Relation w = intersect(model.members[i].rel, model.members[j].rel);
            if (!model.index_of(w))
                return ClosureDefect{ClosureDefect::Op::Intersect, i, j, w};
        }
    return std::nullopt;
}

/// Least superset of the seeds closed under compose and intersect.
/// Deterministic: duplicate seeds are dropped keeping the first name; new
/// members are appended in discovery order under a breadth-first sweep that
/// scans pairs in member-index order, composition before intersection.
/// Members discovered during closure are named m<k> by member index
/// (bumped past any clash with a seed name).
inline ConcreteModel generate_closure(const std::vector<NamedRelation>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("generate_closure: no seeds");
    const int n = seeds.front().rel.base_size();
    for (const auto& s : seeds)
        if (s.rel.base_size() != n)
            throw std::invalid_argument("generate_closure: mismatched base sizes");

    ConcreteModel model;
    model.base_size = n;
    std::unordered_map<std::uint64_t, int> seen;
    auto fresh_name = [&](int index) {
        std::string name = "m" + std::to_string(index);
        auto taken = [&](const std::string& s) {
            for (const auto& m : model.members)
                if (m.name == s) return true;
            return false;
        };
        while (taken(name)) name += "_";
        return name;
    };
    auto add = [&](const Relation& rel, const std::string* seed_name) {
        auto [it, inserted] = seen.emplace(rel.raw(), model.size());
        if (!inserted) return;
        std::string name = seed_name ? *seed_name : fresh_name(model.size());
        model.members.push_back({name, rel});
    };

    for (const auto& s : seeds) add(s.rel, &s.name);

    std::size_t last_round_size = 0;
    while (last_round_size < model.members.size()) {
        std::size_t round_size = model.members.size();
        for (std::size_t i = 0; i < round_size; ++i)
            for (std::size_t j = 0; j < round_size; ++j) {
                if (i < last_round_size && j < last_round_size) continue;
                add(compose(model.members[i].rel, model.members[j].rel), nullptr);
                add(intersect(model.members[i].rel, model.members[j].rel), nullptr);
            }
        last_round_size = round_size;
    }
    return model;
}

/// comp[i][j] = index of members[i];members[j], likewise meet.
/// Requires the model to be closed; a violation is an integrity error
/// naming the offending pair.
inline FiniteAlgebra extract_tables(const ConcreteModel& model) {
    const int m = model.size();
    if (m == 0) throw std::invalid_argument("extract_tables: empty model");
    FiniteAlgebra alg;
    for (const auto& member : model.members) alg.elements.push_back(member.name);
    alg.comp.assign(m, std::vector<int>(m, 0));
    alg.meet.assign(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Relation c = compose(model.members[i].rel, model.members[j].rel);
            auto ci = model.index_of(c);
            if (!ci)
                throw integrity_error("extract_tables: model not closed under composition at (" +
                                      model.members[i].name + ";" + model.members[j].name +
                                      ") = " + c.to_string());
            alg.comp[i][j] = *ci;
            Relation w = intersect(model.members[i].rel, model.members[j].rel);
            auto wi = model.index_of(w);
            if (!wi)
                throw integrity_error("extract_tables: model not closed under intersection at (" +
                                      model.members[i].name + "." + model.members[j].name +
                                      ") = " + w.to_string());
            alg.meet[i][j] = *wi;
        }
    check_well_formed(alg);
    return alg;
}

}  // namespace relrep
