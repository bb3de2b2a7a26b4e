#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "pdv/core.hpp"

namespace pdv {

struct RotZ {
    double c = 1.0, s = 0.0;

    static RotZ from_angle(double yaw) { return {std::cos(yaw), std::sin(yaw)}; }
    RotZ inverse() const { return {c, -s}; }

    Vec3 apply(const Vec3& v) const { return {c * v.x - s * v.y, s * v.x + c * v.y, v.z}; }
};

// Oriented 3D box: center, full extents (length, width, height along the
// canonical x, y, z axes), yaw about world z.
struct OrientedBox {
    Vec3 center;
    Vec3 size;   // (l, w, h), all > 0
    double yaw = 0.0;

    double volume() const { return size.x * size.y * size.z; }

    bool valid() const {
        return center.finite() && size.x > 0.0 && size.y > 0.0 && size.z > 0.0 &&
               std::isfinite(yaw);
    }

    // World -> canonical frame (box centered at origin, axes aligned).
    Vec3 to_canonical(const Vec3& p) const {
        return RotZ::from_angle(yaw).inverse().apply(p - center);
    }
    // Canonical -> world.
    Vec3 to_world(const Vec3& q) const {
        return RotZ::from_angle(yaw).apply(q) + center;
    }

    // Membership under the half-open partition used by grid counting:
    // [-size/2, +size/2) per canonical axis.
    bool contains_half_open(const Vec3& p) const {
        Vec3 q = to_canonical(p);
        return q.x >= -0.5 * size.x && q.x < 0.5 * size.x &&
               q.y >= -0.5 * size.y && q.y < 0.5 * size.y &&
               q.z >= -0.5 * size.z && q.z < 0.5 * size.z;
    }

    // BEV footprint corners, counter-clockwise in world frame.
    std::array<Vec3, 4> bev_corners() const {
        const double hx = 0.5 * size.x, hy = 0.5 * size.y;
        const std::array<Vec3, 4> canon = {Vec3{hx, hy, 0.0}, Vec3{-hx, hy, 0.0},
                                           Vec3{-hx, -hy, 0.0}, Vec3{hx, -hy, 0.0}};
        RotZ r = RotZ::from_angle(yaw);
        std::array<Vec3, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = r.apply(canon[i]) + center;
        return out;
    }
};

// Box proposal from the first stage: geometry plus objectness score.
struct BoxProposal {
    OrientedBox box;
    double score = 0.0;
};

// First intersection of the ray origin + t*dir (t > 0) with the box surface,
// via the slab test in the canonical frame. Returns the ray parameter t.
inline std::optional<double> ray_box_entry(const Vec3& origin, const Vec3& dir,
                                           const OrientedBox& box) {
    RotZ inv = RotZ::from_angle(box.yaw).inverse();
    Vec3 o = inv.apply(origin - box.center);
    Vec3 d = inv.apply(dir);
    double tmin = 0.0;
    double tmax = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const double half = 0.5 * box.size[axis];
        const double da = d[axis], oa = o[axis];
        if (da == 0.0) {
            if (oa < -half || oa > half) return std::nullopt;
            continue;
        }
        double t0 = (-half - oa) / da;
        double t1 = (half - oa) / da;
        if (t0 > t1) std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax) return std::nullopt;
    }
    if (tmin <= 0.0) return std::nullopt;  // origin inside or box behind
    return tmin;
}

}  // namespace pdv
