#pragma once

// Exact sign predicates on planar direction vectors. Doubles are dyadic
// rationals, so converting them to cpp_rational and evaluating the 2x2
// determinant / dot product there gives the true sign of the value the
// stored coordinates denote. All planar pattern decisions run on these
// predicates; no tolerance is involved.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace linepin::exact {

using Rat = boost::multiprecision::cpp_rational;

inline int sign_of(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// sign(a.x*b.y - a.y*b.x)
inline int sign_cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    Rat ax(a.x()), ay(a.y()), bx(b.x()), by(b.y());
    return sign_of(ax * by - ay * bx);
}

// sign(<a,b>)
inline int sign_dot(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    Rat ax(a.x()), ay(a.y()), bx(b.x()), by(b.y());
    return sign_of(ax * bx + ay * by);
}

inline bool parallel(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return sign_cross(a, b) == 0;
}

inline bool same_direction(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return sign_cross(a, b) == 0 && sign_dot(a, b) > 0;
}

inline bool opposite_direction(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return sign_cross(a, b) == 0 && sign_dot(a, b) < 0;
}

// CCW rotation by 90 degrees; exact (negation only).
inline Eigen::Vector2d rot90(const Eigen::Vector2d& v) {
    return {-v.y(), v.x()};
}

// Rank of v relative to an anchor direction, by CCW angle from the anchor:
// 0 same direction, 1 in (0,180), 2 opposite, 3 in (180,360).
inline int cyclic_rank(const Eigen::Vector2d& anchor, const Eigen::Vector2d& v) {
    int c = sign_cross(anchor, v);
    if (c > 0) return 1;
    if (c < 0) return 3;
    return sign_dot(anchor, v) > 0 ? 0 : 2;
}

// Strict CCW-from-anchor order; directions must be pairwise distinct for a
// strict weak ordering, which pattern validation guarantees.
inline bool cyclic_less(const Eigen::Vector2d& anchor,
                        const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    int ra = cyclic_rank(anchor, a), rb = cyclic_rank(anchor, b);
    if (ra != rb) return ra < rb;
    if (ra == 0 || ra == 2) return false; // parallel to anchor: equal rank slot
    return sign_cross(a, b) > 0;
}

} // namespace linepin::exact
