#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relrep {

/// A binary relation on the base set {0, ..., n-1}, stored as an n x n
/// bit matrix packed into a single word (bit x*n+y holds pair (x,y)).
/// Base sizes run from 1 to kMaxBase. Relations are plain values:
/// cheap to copy, compare, and hash; all operations on them are pure.
class Relation {
public:
    static constexpr int kMaxBase = 8;

    explicit Relation(int base_size) : n_(checked_base(base_size)), bits_(0) {}

    Relation(int base_size, std::initializer_list<std::pair<int, int>> pairs)
        : Relation(base_size) {
        for (auto [x, y] : pairs) insert(x, y);
    }

    static Relation empty(int n) { return Relation(n); }

    static Relation full(int n) {
        Relation r(n);
        r.bits_ = universe_mask(r.n_);
        return r;
    }

    static Relation from_raw(int n, std::uint64_t bits) {
        Relation r(n);
        if (bits & ~universe_mask(r.n_))
            throw std::invalid_argument("Relation::from_raw: bits outside base");
        r.bits_ = bits;
        return r;
    }

    static Relation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
        Relation r(n);
        for (auto [x, y] : pairs) r.insert(x, y);
        return r;
    }

    int base_size() const { return n_; }

    bool contains(int x, int y) const { return (bits_ >> index(x, y)) & 1u; }

    void insert(int x, int y) { bits_ |= std::uint64_t{1} << index(x, y); }

    void erase(int x, int y) { bits_ &= ~(std::uint64_t{1} << index(x, y)); }

    bool is_empty() const { return bits_ == 0; }

    int pair_count() const { return std::popcount(bits_); }

    /// Row x as an n-bit mask: bit y set iff (x,y) is present.
    std::uint64_t row(int x) const {
        return (bits_ >> (x * n_)) & row_mask(n_);
    }

    std::uint64_t raw() const { return bits_; }

    bool subset_of(const Relation& other) const {
        require_same_base(other, "subset_of");
        return (bits_ & ~other.bits_) == 0;
    }

    /// Pairs in row-major order.
    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(pair_count());
        for (int x = 0; x < n_; ++x)
            for (int y = 0; y < n_; ++y)
                if (contains(x, y)) out.emplace_back(x, y);
        return out;
    }

    /// "{(0,1),(1,2)}"; the empty relation prints as "{}".
    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (auto [x, y] : pairs()) {
            if (!first) os << ',';
            os << '(' << x << ',' << y << ')';
            first = false;
        }
        os << '}';
        return os.str();
    }

    friend bool operator==(const Relation&, const Relation&) = default;

    void require_same_base(const Relation& other, const char* op) const {
        if (n_ != other.n_)
            throw std::invalid_argument(std::string(op) + ": mismatched base sizes");
    }

    static std::uint64_t row_mask(int n) { return (std::uint64_t{1} << n) - 1; }

    static std::uint64_t universe_mask(int n) {
        return n * n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n * n)) - 1;
    }

private:
    static int checked_base(int n) {
        if (n < 1) throw std::invalid_argument("Relation: base size must be >= 1");
        if (n > kMaxBase) throw std::invalid_argument("Relation: base size exceeds kMaxBase");
        return n;
    }

    int index(int x, int y) const {
        if (x < 0 || x >= n_ || y < 0 || y >= n_)
            throw std::invalid_argument("Relation: pair outside base");
        return x * n_ + y;
    }

    int n_;
    std::uint64_t bits_;
};

/// Composition on packed bit matrices: out row x is the OR of b's rows z
/// over all z in a's row x.
inline std::uint64_t compose_raw(int n, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t rmask = Relation::row_mask(n);
    std::uint64_t out = 0;
    for (int x = 0; x < n; ++x) {
        std::uint64_t arow = (a >> (x * n)) & rmask;
        std::uint64_t orow = 0;
        while (arow) {
            int z = std::countr_zero(arow);
            arow &= arow - 1;
            orow |= (b >> (z * n)) & rmask;
        }
        out |= orow << (x * n);
    }
    return out;
}

/// a;b = {(x,y) : (x,z) in a and (z,y) in b for some z}.
inline Relation compose(const Relation& a, const Relation& b) {
    a.require_same_base(b, "compose");
    return Relation::from_raw(a.base_size(), compose_raw(a.base_size(), a.raw(), b.raw()));
}

inline Relation intersect(const Relation& a, const Relation& b) {
    a.require_same_base(b, "intersect");
    return Relation::from_raw(a.base_size(), a.raw() & b.raw());
}

inline Relation identity(int n) {
    Relation r(n);
    for (int x = 0; x < n; ++x) r.insert(x, x);
    return r;
}

inline Relation complement(const Relation& a) {
    return Relation::from_raw(a.base_size(),
                              ~a.raw() & Relation::universe_mask(a.base_size()));
}

inline Relation difference(const Relation& a, const Relation& b) {
    a.require_same_base(b, "difference");
    return Relation::from_raw(a.base_size(), a.raw() & ~b.raw());
}

}  // namespace relrep
