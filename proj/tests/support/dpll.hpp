#pragma once

// Minimal DPLL satisfiability check, used only as a test oracle for the
// CNF encoder. Unit propagation plus branching on the first unassigned
// variable, false tried first (mirroring the search's value order).

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

class Dpll {
public:
    Dpll(int nvars, std::vector<std::vector<int>> clauses)
        : nvars_(nvars), clauses_(std::move(clauses)), value_(nvars + 1, 0) {}

    /// Satisfying literal list (one per variable), or nullopt when UNSAT.
    std::optional<std::vector<int>> solve() {
        if (!run()) return std::nullopt;
        std::vector<int> lits;
        for (int v = 1; v <= nvars_; ++v) lits.push_back(value_[v] >= 0 ? v : -v);
        return lits;
    }

private:
    int nvars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<signed char> value_;  // 0 unassigned, +1 true, -1 false

    signed char eval(int lit) const {
        signed char v = value_[lit < 0 ? -lit : lit];
        return lit < 0 ? static_cast<signed char>(-v) : v;
    }

    // Propagates unit clauses; false on conflict. Assigned trail entries are
    // appended to `trail` for rollback.
    bool propagate(std::vector<int>& trail) {
        bool again = true;
        while (again) {
            again = false;
            for (const auto& clause : clauses_) {
                int unassigned = 0;
                int free_lit = 0;
                bool satisfied = false;
                for (int lit : clause) {
                    signed char v = eval(lit);
                    if (v > 0) {
                        satisfied = true;
                        break;
                    }
                    if (v == 0) {
                        ++unassigned;
                        free_lit = lit;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign(free_lit, trail);
                    again = true;
                }
            }
        }
        return true;
    }

    void assign(int lit, std::vector<int>& trail) {
        value_[lit < 0 ? -lit : lit] = lit < 0 ? -1 : 1;
        trail.push_back(lit < 0 ? -lit : lit);
    }

    bool run() {
        std::vector<int> trail;
        if (!propagate(trail)) {
            for (int v : trail) value_[v] = 0;
            return false;
        }
        int branch = 0;
        for (int v = 1; v <= nvars_; ++v)
            if (value_[v] == 0) {
                branch = v;
                break;
            }
        if (branch == 0) return true;
        for (int sign : {-1, +1}) {
            std::vector<int> sub;
            assign(sign * branch, sub);
            if (run()) return true;
            for (int v : sub) value_[v] = 0;
        }
        for (int v : trail) value_[v] = 0;
        return false;
    }
};

inline std::optional<std::vector<int>> dpll_solve(int nvars,
                                                  std::vector<std::vector<int>> clauses) {
    return Dpll(nvars, std::move(clauses)).solve();
}

}  // namespace oracle
