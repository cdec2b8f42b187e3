#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relrep/qorder.hpp"
#include "relrep/rational.hpp"
#include "relrep/relation.hpp"

namespace relrep {

enum class Rel { Z, E, R };

inline const char* rel_name(Rel t) {
    switch (t) {
        case Rel::Z: return "z";
        case Rel::E: return "e";
        case Rel::R: return "r";
    }
    return "?";
}

/// The seven conditions of the infinite-base theorem, as named checks.
enum class Hypothesis { R_E, E_R, R_R, Z_R, R_Z, MEET, DISTINCT };

inline const char* hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::R_E: return "R_E";
        case Hypothesis::E_R: return "E_R";
        case Hypothesis::R_R: return "R_R";
        case Hypothesis::Z_R: return "Z_R";
        case Hypothesis::R_Z: return "R_Z";
        case Hypothesis::MEET: return "MEET";
        case Hypothesis::DISTINCT: return "DISTINCT";
    }
    return "?";
}

inline const char* hypothesis_equation(Hypothesis h) {
    switch (h) {
        case Hypothesis::R_E: return "r;e = r";
        case Hypothesis::E_R: return "e;r = r";
        case Hypothesis::R_R: return "r;r = r";
        case Hypothesis::Z_R: return "z;r = z";
        case Hypothesis::R_Z: return "r;z = z";
        case Hypothesis::MEET: return "r.e = z";
        case Hypothesis::DISTINCT: return "z, e, r pairwise distinct";
    }
    return "?";
}

template <class Point>
std::string point_to_string(const Point& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

/// Three relations z, e, r over a finite base, the finite side of the
/// theorem's model interface.
struct FiniteTriple {
    using Point = int;

    int base_size;
    Relation z, e, r;

    FiniteTriple(Relation z_, Relation e_, Relation r_)
        : base_size(z_.base_size()), z(z_), e(std::move(e_)), r(std::move(r_)) {
        z.require_same_base(e, "FiniteTriple");
        z.require_same_base(r, "FiniteTriple");
    }

    const Relation& rel(Rel t) const {
        switch (t) {
            case Rel::Z: return z;
            case Rel::E: return e;
            default: return r;
        }
    }

    bool in(Rel t, Point p, Point q) const { return rel(t).contains(p, q); }

    /// First w in index order with (p,w) in A and (w,q) in B.
    std::optional<Point> comp_witness(Rel A, Rel B, Point p, Point q) const {
        for (int w = 0; w < base_size; ++w)
            if (rel(A).contains(p, w) && rel(B).contains(w, q)) return w;
        return std::nullopt;
    }

    std::optional<std::pair<Point, Point>> first_r_not_z() const {
        Relation d = difference(r, z);
        for (auto [x, y] : d.pairs()) return std::pair{x, y};
        return std::nullopt;
    }

    std::vector<Point> reflexive_r_points() const {
        std::vector<Point> out;
        for (int x = 0; x < base_size; ++x)
            if (r.contains(x, x)) out.push_back(x);
        return out;
    }

    /// First pair, in row-major order, where A;B and C disagree.
    std::optional<std::pair<Point, Point>> comp_eq_defect(Rel A, Rel B, Rel C) const {
        Relation lhs = compose(rel(A), rel(B));
        return first_diff(lhs, rel(C));
    }

    std::optional<std::pair<Point, Point>> meet_eq_defect(Rel A, Rel B, Rel C) const {
        Relation lhs = intersect(rel(A), rel(B));
        return first_diff(lhs, rel(C));
    }

    std::optional<std::pair<Rel, Rel>> distinct_defect() const {
        if (z == e) return std::pair{Rel::Z, Rel::E};
        if (z == r) return std::pair{Rel::Z, Rel::R};
        if (e == r) return std::pair{Rel::E, Rel::R};
        return std::nullopt;
    }

private:
    std::optional<std::pair<Point, Point>> first_diff(const Relation& a,
                                                      const Relation& b) const {
        for (int x = 0; x < base_size; ++x)
            for (int y = 0; y < base_size; ++y)
                if (a.contains(x, y) != b.contains(x, y)) return std::pair{x, y};
        return std::nullopt;
    }
};

/// Three relations definable over the dense unbounded rational order, the
/// symbolic side of the model interface. Membership questions only depend
/// on the comparison class of a pair, so equation defects are reported on
/// fixed representative pairs: (0,1) for LT, (0,0) for EQ, (1,0) for GT.
struct SymbolicTriple {
    using Point = Rational;

    BasisSet z, e, r;

    BasisSet rel(Rel t) const {
        switch (t) {
            case Rel::Z: return z;
            case Rel::E: return e;
            default: return r;
        }
    }

    bool in(Rel t, const Point& p, const Point& q) const { return member(p, q, rel(t)); }

    std::optional<Point> comp_witness(Rel A, Rel B, const Point& p, const Point& q) const {
        return witness(p, q, rel(A), rel(B));
    }

    std::optional<std::pair<Point, Point>> first_r_not_z() const {
        return representative(BasisSet(rel(Rel::R).mask() & ~rel(Rel::Z).mask()));
    }

    std::vector<Point> reflexive_r_points() const {
        if (r.contains(Basic::EQ)) return {Rational(0)};
        return {};
    }

    std::optional<std::pair<Point, Point>> comp_eq_defect(Rel A, Rel B, Rel C) const {
        BasisSet lhs = compose_symbolic(rel(A), rel(B));
        return representative(BasisSet(lhs.mask() ^ rel(C).mask()));
    }

    std::optional<std::pair<Point, Point>> meet_eq_defect(Rel A, Rel B, Rel C) const {
        BasisSet lhs = intersect_symbolic(rel(A), rel(B));
        return representative(BasisSet(lhs.mask() ^ rel(C).mask()));
    }

    std::optional<std::pair<Rel, Rel>> distinct_defect() const {
        if (z == e) return std::pair{Rel::Z, Rel::E};
        if (z == r) return std::pair{Rel::Z, Rel::R};
        if (e == r) return std::pair{Rel::E, Rel::R};
        return std::nullopt;
    }

private:
    static std::optional<std::pair<Point, Point>> representative(BasisSet classes) {
        if (classes.contains(Basic::LT)) return std::pair{Rational(0), Rational(1)};
        if (classes.contains(Basic::EQ)) return std::pair{Rational(0), Rational(0)};
        if (classes.contains(Basic::GT)) return std::pair{Rational(1), Rational(0)};
        return std::nullopt;
    }
};

using ModelTriple = std::variant<FiniteTriple, SymbolicTriple>;

template <class Model>
struct HypoFailure {
    using Point = typename Model::Point;
    Hypothesis which;
    std::optional<std::pair<Point, Point>> pair;  // a pair the two sides disagree on
    std::string note;                             // DISTINCT: which relations collide
};

/// All failed conditions, in the fixed order R_E, E_R, R_R, Z_R, R_Z, MEET,
/// DISTINCT; empty iff the model satisfies the theorem's hypotheses.
template <class Model>
std::vector<HypoFailure<Model>> check_hypotheses(const Model& m) {
    std::vector<HypoFailure<Model>> out;
    auto comp_check = [&](Hypothesis h, Rel A, Rel B, Rel C) {
        if (auto d = m.comp_eq_defect(A, B, C)) out.push_back({h, d, ""});
    };
    comp_check(Hypothesis::R_E, Rel::R, Rel::E, Rel::R);
    comp_check(Hypothesis::E_R, Rel::E, Rel::R, Rel::R);
    comp_check(Hypothesis::R_R, Rel::R, Rel::R, Rel::R);
    comp_check(Hypothesis::Z_R, Rel::Z, Rel::R, Rel::Z);
    comp_check(Hypothesis::R_Z, Rel::R, Rel::Z, Rel::Z);
    if (auto d = m.meet_eq_defect(Rel::R, Rel::E, Rel::Z))
        out.push_back({Hypothesis::MEET, d, ""});
    if (auto names = m.distinct_defect())
        out.push_back({Hypothesis::DISTINCT, std::nullopt,
                       std::string(rel_name(names->first)) + " = " + rel_name(names->second)});
    return out;
}

template <class Model>
struct LemmaTrace {
    typename Model::Point x;  // the reflexive point: (x,x) in r
    typename Model::Point y;  // the witness: (x,y) in r and (y,x) in e
};

template <class Model>
struct LemmaBlocked {
    Hypothesis hypothesis;
    typename Model::Point x;
    std::optional<typename Model::Point> y;
};

template <class Model>
struct LemmaOutcome {
    std::vector<LemmaTrace<Model>> traces;      // one per reflexive point of r
    std::optional<LemmaBlocked<Model>> blocked;
    bool confirmed() const { return !blocked.has_value(); }
};

/// One constructive pass of the identity-part argument at a single point x
/// with (x,x) in r: produce y from r = r;e, push (y,x) through e;r = r and
/// r.e = z, then land (x,x) in z through r;z = z. Each step checks the
/// needed instance of its hypothesis directly, so a blocked step certifies
/// a genuine equation failure on the model.
template <class Model>
std::variant<LemmaTrace<Model>, LemmaBlocked<Model>> replay_identity_at(
    const Model& m, const typename Model::Point& x) {
    auto y = m.comp_witness(Rel::R, Rel::E, x, x);
    if (!y) return LemmaBlocked<Model>{Hypothesis::R_E, x, std::nullopt};
    // (y,x) in e and (x,x) in r put (y,x) in e;r.
    if (!m.in(Rel::R, *y, x)) return LemmaBlocked<Model>{Hypothesis::E_R, x, y};
    // (y,x) now lies in both r and e, hence in r.e.
    if (!m.in(Rel::Z, *y, x)) return LemmaBlocked<Model>{Hypothesis::MEET, x, y};
    // (x,y) in r and (y,x) in z put (x,x) in r;z.
    if (!m.in(Rel::Z, x, x)) return LemmaBlocked<Model>{Hypothesis::R_Z, x, y};
    return LemmaTrace<Model>{x, *y};
}

/// Id . r <= z, established constructively point by point. Either every
/// reflexive point of r is confirmed to lie in z (with the per-point trace),
/// or the first blocked step pinpoints a violated hypothesis.
template <class Model>
LemmaOutcome<Model> derive_identity_lemma(const Model& m) {
    LemmaOutcome<Model> out;
    for (const auto& x : m.reflexive_r_points()) {
        auto step = replay_identity_at(m, x);
        if (auto* blocked = std::get_if<LemmaBlocked<Model>>(&step)) {
            out.blocked = *blocked;
            return out;
        }
        out.traces.push_back(std::get<LemmaTrace<Model>>(step));
    }
    return out;
}

/// The theorem's witness object: an anchor y and a chain x_0..x_n with
/// (x_i,x_j) and (x_i,y) in r but not z, every membership recorded together
/// with the composition intermediate that produced it (when there was one).
template <class Model>
struct ChainCertificate {
    using Point = typename Model::Point;
    static constexpr int kAnchor = -1;  // j-value standing for the anchor y

    struct Membership {
        int i;
        int j;  // chain index, or kAnchor
        std::optional<int> witness;  // chain index of the intermediate
    };

    Point y{};
    std::vector<Point> chain;
    std::vector<Membership> memberships;

    int length() const { return static_cast<int>(chain.size()) - 1; }
    const Point& point(int idx) const { return idx == kAnchor ? y : chain[idx]; }
};

template <class Model>
struct ChainFailure {
    enum class Stage { Start, Extend, Verify };
    using Point = typename Model::Point;

    Stage stage;
    std::optional<Hypothesis> hypothesis;
    std::optional<std::pair<Point, Point>> pair;  // the pair violating the equation
    std::string message;
};

template <class Model>
using ChainResult = std::variant<ChainCertificate<Model>, ChainFailure<Model>>;

template <class Model>
std::variant<std::pair<typename Model::Point, typename Model::Point>, ChainFailure<Model>>
find_start(const Model& m) {
    if (auto p = m.first_r_not_z()) return *p;
    return ChainFailure<Model>{
        ChainFailure<Model>::Stage::Start, std::nullopt, std::nullopt,
        "r minus z is empty; since r.e = z forces z to be a subset of r, "
        "that makes z = r, contradicting DISTINCT"};
}

/// One stage of the chain construction. Applies r;r = r to (x_n,y) to get
/// x_{n+1}, rules z out of the two new edges through z;r = z and r;z = z,
/// then closes (x_i,x_{n+1}) in r minus z for every i < n. A collapsed point
/// would put a reflexive pair in r minus z, so the identity-part replay at
/// that point is guaranteed to localize a violated hypothesis.
template <class Model>
ChainResult<Model> extend_chain(const Model& m, ChainCertificate<Model> cert) {
    using CF = ChainFailure<Model>;
    using Stage = typename CF::Stage;
    using Point = typename Model::Point;
    const int n = cert.length();
    const Point xn = cert.chain[n];
    const Point y = cert.y;

    auto w = m.comp_witness(Rel::R, Rel::R, xn, y);
    if (!w)
        return CF{Stage::Extend, Hypothesis::R_R, std::pair{xn, y},
                  "(x_n,y) lies in r but not in r;r"};
    const Point xnew = *w;
    if (m.in(Rel::Z, xn, xnew))
        return CF{Stage::Extend, Hypothesis::Z_R, std::pair{xn, y},
                  "(x_n,y) lies in z;r but not in z"};
    if (m.in(Rel::Z, xnew, y))
        return CF{Stage::Extend, Hypothesis::R_Z, std::pair{xn, y},
                  "(x_n,y) lies in r;z but not in z"};

    for (int i = 0; i < n; ++i) {
        const Point& xi = cert.chain[i];
        if (!m.in(Rel::R, xi, xnew))
            return CF{Stage::Extend, Hypothesis::R_R, std::pair{xi, xnew},
                      "(x_i,x_new) lies in r;r but not in r"};
        if (m.in(Rel::Z, xi, xnew))
            return CF{Stage::Extend, Hypothesis::Z_R, std::pair{xi, y},
                      "(x_i,y) lies in z;r but not in z"};
    }

    auto collision = [&]() -> std::optional<Point> {
        if (xnew == y) return y;
        for (const Point& p : cert.chain)
            if (p == xnew) return p;
        return std::nullopt;
    }();
    if (collision) {
        auto replay = replay_identity_at(m, *collision);
        if (auto* blocked = std::get_if<LemmaBlocked<Model>>(&replay))
            return CF{Stage::Extend, blocked->hypothesis,
                      std::pair{blocked->x, blocked->y.value_or(blocked->x)},
                      "chain point " + point_to_string(*collision) +
                          " repeats; the identity-part replay at it blocks here"};
        return CF{Stage::Verify, std::nullopt, std::nullopt,
                  "chain point " + point_to_string(*collision) + " repeats"};
    }

    using Membership = typename ChainCertificate<Model>::Membership;
    cert.chain.push_back(xnew);
    cert.memberships.push_back(Membership{n, n + 1, std::nullopt});
    cert.memberships.push_back(
        Membership{n + 1, ChainCertificate<Model>::kAnchor, std::nullopt});
    for (int i = 0; i < n; ++i)
        cert.memberships.push_back(Membership{i, n + 1, n});
    return cert;
}

/// Re-checks a certificate from scratch using only membership queries:
/// every pair (x_i,x_j) with i<j and every (x_i,y) lies in r but not z,
/// every such claim is recorded, every recorded intermediate validates,
/// and all points (chain and anchor) are pairwise distinct.
template <class Model>
std::optional<std::string> verify_certificate(const Model& m,
                                              const ChainCertificate<Model>& cert) {
    const int n = cert.length();
    if (n < 0) return "certificate has an empty chain";

    auto pair_str = [&](int i, int j) {
        return "(" + point_to_string(cert.point(i)) + "," + point_to_string(cert.point(j)) +
               ")";
    };

    std::vector<bool> recorded((n + 1) * (n + 2), false);
    auto slot = [&](int i, int j) { return i * (n + 2) + (j == cert.kAnchor ? n + 1 : j); };
    for (const auto& mem : cert.memberships) {
        if (mem.i < 0 || mem.i > n) return "membership index out of range";
        if (mem.j != cert.kAnchor && (mem.j < 0 || mem.j > n))
            return "membership index out of range";
        if (mem.witness && (*mem.witness < 0 || *mem.witness > n))
            return "witness index out of range";
        recorded[slot(mem.i, mem.j)] = true;
        if (mem.witness) {
            const auto& wp = cert.chain[*mem.witness];
            if (!m.in(Rel::R, cert.point(mem.i), wp) || !m.in(Rel::R, wp, cert.point(mem.j)))
                return "recorded witness for " + pair_str(mem.i, mem.j) +
                       " fails its member checks";
        }
    }

    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (!m.in(Rel::R, cert.chain[i], cert.chain[j]))
                return "pair " + pair_str(i, j) + " is not in r";
            if (m.in(Rel::Z, cert.chain[i], cert.chain[j]))
                return "pair " + pair_str(i, j) + " is in z";
            if (!recorded[slot(i, j)]) return "pair " + pair_str(i, j) + " is not recorded";
        }
        if (!m.in(Rel::R, cert.chain[i], cert.y))
            return "pair " + pair_str(i, cert.kAnchor) + " is not in r";
        if (m.in(Rel::Z, cert.chain[i], cert.y))
            return "pair " + pair_str(i, cert.kAnchor) + " is in z";
        if (!recorded[slot(i, cert.kAnchor)])
            return "pair " + pair_str(i, cert.kAnchor) + " is not recorded";
    }

    std::vector<typename Model::Point> points = cert.chain;
    points.push_back(cert.y);
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        return "points are not pairwise distinct";
    return std::nullopt;
}

/// find_start, then depth extension stages, then a from-scratch verification
/// that is independent of the construction path.
template <class Model>
ChainResult<Model> run_chain(const Model& m, int depth) {
    if (depth < 1) throw std::invalid_argument("run_chain: depth must be >= 1");
    auto start = find_start(m);
    if (auto* fail = std::get_if<ChainFailure<Model>>(&start)) return *fail;
    auto [x0, y] = std::get<0>(start);

    ChainCertificate<Model> cert;
    cert.y = y;
    cert.chain.push_back(x0);
    cert.memberships.push_back({0, ChainCertificate<Model>::kAnchor, std::nullopt});

    for (int k = 0; k < depth; ++k) {
        auto next = extend_chain(m, std::move(cert));
        if (auto* fail = std::get_if<ChainFailure<Model>>(&next)) return *fail;
        cert = std::move(std::get<ChainCertificate<Model>>(next));
    }
    if (auto err = verify_certificate(m, cert))
        return ChainFailure<Model>{ChainFailure<Model>::Stage::Verify, std::nullopt,
                                   std::nullopt, *err};
    return cert;
}

/// Line-oriented certificate text: a header, one line per chain point, one
/// line per recorded membership. Grammar:
///   chain n=<len> y=<point>
///   x<i> <point>                         for i = 0..len
///   pair <i> <j|y> in r not-z witness <point|->
template <class Model>
void write_certificate(std::ostream& os, const ChainCertificate<Model>& cert) {
    os << "chain n=" << cert.length() << " y=" << cert.y << "\n";
    for (int i = 0; i <= cert.length(); ++i) os << "x" << i << " " << cert.chain[i] << "\n";
    for (const auto& mem : cert.memberships) {
        os << "pair " << mem.i << " ";
        if (mem.j == cert.kAnchor)
            os << "y";
        else
            os << mem.j;
        os << " in r not-z witness ";
        if (mem.witness)
            os << cert.chain[*mem.witness];
        else
            os << "-";
        os << "\n";
    }
}

}  // namespace relrep
