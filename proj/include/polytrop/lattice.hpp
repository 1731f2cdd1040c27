#pragma once

#include <cstddef>
#include <string>

#include "polytrop/arith.hpp"

namespace polytrop {

/// Ambient rank limit for everything users can construct.
inline constexpr std::size_t kMaxRank = 4;

using LatticeVector = IntVec;
using RationalVector = RatVec;

inline void check_rank(std::size_t n) {
    require(n >= 1 && n <= kMaxRank, ErrorKind::RankCap,
            "ambient rank " + std::to_string(n) + " outside supported range 1.." + std::to_string(kMaxRank));
}

inline void check_same_rank(std::size_t a, std::size_t b) {
    require(a == b, ErrorKind::DimensionMismatch,
            "rank " + std::to_string(a) + " vs " + std::to_string(b));
}

/// A rational half line, stored by its primitive lattice generator.
class Ray {
public:
    const LatticeVector& direction() const { return dir_; }
    std::size_t rank() const { return dir_.size(); }

    friend Ray primitive(const LatticeVector& v);

    friend bool operator==(const Ray& a, const Ray& b) { return a.dir_ == b.dir_; }
    friend bool operator<(const Ray& a, const Ray& b) { return a.dir_ < b.dir_; }

private:
    explicit Ray(LatticeVector d) : dir_(std::move(d)) {}
    LatticeVector dir_;
};

inline Ray primitive(const LatticeVector& v) {
    require(!is_zero(v), ErrorKind::ZeroVector, "primitive() of the zero vector");
    return Ray(make_primitive(v));
}

inline std::string to_string(const Ray& r) { return to_string(r.direction()); }

} // namespace polytrop
