#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relrep/algebra.hpp"
#include "relrep/errors.hpp"
#include "relrep/relation.hpp"
#include "relrep/representation.hpp"

namespace relrep {

struct CnfInstance {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> variable_map;  // one comment line per entry
};

/// Propositional form of "some injective assignment of relations on an
/// n-point base realizes the tables". Base variable v(a,x,y) = a*n^2+x*n+y+1
/// says element a holds pair (x,y). Per composition entry c=a;b and pair:
/// n soundness clauses, n one-direction witnesses t_z, one completeness
/// clause. Per meet entry: the three subset clauses. Per unordered element
/// pair: n^2 difference variables and a clause demanding one holds.
/// Auxiliaries are numbered after the base block in emission order.
inline CnfInstance encode_cnf(const FiniteAlgebra& algebra, int n) {
    check_well_formed(algebra);
    if (n < 1 || n > Relation::kMaxBase)
        throw std::invalid_argument("encode_cnf: base size out of range");
    const int m = algebra.size();
    const int nn = n * n;
    auto v = [&](int a, int x, int y) { return a * nn + x * n + y + 1; };

    CnfInstance inst;
    int next = m * nn + 1;
    const int t_first = next;

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const int c = algebra.comp_of(a, b);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    const int t_base = next;
                    next += n;
                    for (int z = 0; z < n; ++z)
                        inst.clauses.push_back({-v(a, x, z), -v(b, z, y), v(c, x, y)});
                    for (int z = 0; z < n; ++z) {
                        inst.clauses.push_back({-(t_base + z), v(a, x, z)});
                        inst.clauses.push_back({-(t_base + z), v(b, z, y)});
                    }
                    std::vector<int> complete{-v(c, x, y)};
                    for (int z = 0; z < n; ++z) complete.push_back(t_base + z);
                    inst.clauses.push_back(std::move(complete));
                }
        }
    const int t_last = next - 1;

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const int d = algebra.meet_of(a, b);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    inst.clauses.push_back({-v(d, x, y), v(a, x, y)});
                    inst.clauses.push_back({-v(d, x, y), v(b, x, y)});
                    inst.clauses.push_back({-v(a, x, y), -v(b, x, y), v(d, x, y)});
                }
        }

    const int d_first = next;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            std::vector<int> some_diff;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    const int d = next++;
                    inst.clauses.push_back({-d, v(a, x, y), v(b, x, y)});
                    inst.clauses.push_back({-d, -v(a, x, y), -v(b, x, y)});
                    some_diff.push_back(d);
                }
            inst.clauses.push_back(std::move(some_diff));
        }
    const int d_last = next - 1;

    inst.variable_count = next - 1;

    std::ostringstream names;
    for (int a = 0; a < m; ++a) names << (a ? " " : "") << a << "=" << algebra.elements[a];
    inst.variable_map.push_back("elements: " + names.str());
    inst.variable_map.push_back("base size: n=" + std::to_string(n));
    inst.variable_map.push_back(
        "v(a,x,y) = a*" + std::to_string(nn) + " + x*" + std::to_string(n) +
        " + y + 1: element a holds pair (x,y); variables 1.." + std::to_string(m * nn));
    inst.variable_map.push_back(
        "t variables " + std::to_string(t_first) + ".." + std::to_string(t_last) +
        ": blocks of " + std::to_string(n) +
        " per composition entry (a-major, then b) and pair (row-major); "
        "t(a,b,x,y,z) true demands a(x,z) and b(z,y)");
    if (d_last >= d_first)
        inst.variable_map.push_back(
            "d variables " + std::to_string(d_first) + ".." + std::to_string(d_last) +
            ": one per element pair a<b (pair-major) and base pair (row-major); "
            "d(a,b,x,y) true demands a(x,y) and b(x,y) differ");
    return inst;
}

/// DIMACS CNF: the variable map as "c" comments, then the problem line,
/// then one zero-terminated clause per line.
inline void write_dimacs(std::ostream& os, const CnfInstance& inst) {
    for (const auto& line : inst.variable_map) os << "c " << line << "\n";
    os << "p cnf " << inst.variable_count << " " << inst.clauses.size() << "\n";
    for (const auto& clause : inst.clauses) {
        for (int lit : clause) os << lit << " ";
        os << "0\n";
    }
}

/// Signed literals from solver output: integer tokens are collected, zeros
/// dropped, anything non-numeric (status words, "v" prefixes) skipped.
inline std::vector<int> read_assignment(std::istream& is) {
    std::vector<int> lits;
    std::string tok;
    while (is >> tok) {
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            continue;
        }
        if (pos != tok.size() || value == 0) continue;
        lits.push_back(value);
    }
    return lits;
}

/// Reads the base-variable polarities of a satisfying assignment back into
/// relations and packages the result as a verified-shape Representation.
/// Auxiliary variables are ignored; the table constraints are re-checked
/// directly on the decoded relations.
inline Representation decode_cnf(const CnfInstance& inst, const std::vector<int>& literals,
                                 const FiniteAlgebra& algebra, int n) {
    check_well_formed(algebra);
    if (n < 1 || n > Relation::kMaxBase)
        throw std::invalid_argument("decode_cnf: base size out of range");
    const int m = algebra.size();
    const int base_vars = m * n * n;
    if (inst.variable_count < base_vars)
        throw std::invalid_argument("decode_cnf: instance too small for algebra and size");

    std::vector<int> polarity(base_vars + 1, 0);  // 0 unset, +1 true, -1 false
    for (int lit : literals) {
        const int var = lit < 0 ? -lit : lit;
        if (var >= 1 && var <= base_vars) polarity[var] = lit < 0 ? -1 : 1;
    }
    for (int var = 1; var <= base_vars; ++var)
        if (polarity[var] == 0)
            throw std::invalid_argument("decode_cnf: assignment misses base variable " +
                                        std::to_string(var));

    std::vector<Relation> images;
    for (int a = 0; a < m; ++a) {
        Relation rel(n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (polarity[a * n * n + x * n + y + 1] > 0) rel.insert(x, y);
        images.push_back(rel);
    }

    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const auto& ea = algebra.elements[a];
            const auto& eb = algebra.elements[b];
            if (compose(images[a], images[b]) != images[algebra.comp_of(a, b)])
                throw integrity_error("decode_cnf: composition entry " + ea + ";" + eb +
                                      " is violated by the assignment");
            if (intersect(images[a], images[b]) != images[algebra.meet_of(a, b)])
                throw integrity_error("decode_cnf: meet entry " + ea + "." + eb +
                                      " is violated by the assignment");
        }
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (images[a] == images[b])
                throw integrity_error("decode_cnf: elements " + algebra.elements[a] +
                                      " and " + algebra.elements[b] +
                                      " decode to the same relation");

    return make_representation(algebra, n, images);
}

}  // namespace relrep
