#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hullbench {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
    Vec3 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("cannot normalize zero vector");
        return *this / n;
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 min(const Vec3& a, const Vec3& b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 max(const Vec3& a, const Vec3& b) {
    return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

/// Axis-aligned bounding box; min <= max component-wise when valid.
struct AABB {
    Vec3 min{0, 0, 0};
    Vec3 max{0, 0, 0};

    static AABB empty() {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {{inf, inf, inf}, {-inf, -inf, -inf}};
    }
    void extend(const Vec3& p) {
        min = hullbench::min(min, p);
        max = hullbench::max(max, p);
    }
    void extend(const AABB& b) {
        extend(b.min);
        extend(b.max);
    }
    bool valid() const {
        return min.finite() && max.finite() && min.x <= max.x && min.y <= max.y &&
               min.z <= max.z;
    }
    Vec3 extent() const { return max - min; }
    Vec3 center() const { return (min + max) * 0.5; }
    double diagonal() const { return extent().norm(); }
    bool contains(const Vec3& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
               p.z >= min.z && p.z <= max.z;
    }
    /// Grows the box by `fraction` of its extent on each side.
    AABB padded(double fraction) const {
        const Vec3 pad = extent() * fraction;
        return {min - pad, max + pad};
    }
};

/// Row-major 3x3 matrix, just enough for camera rotations.
struct Mat3 {
    double m[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
        Mat3 out;
        out.m[0] = r0.x; out.m[1] = r0.y; out.m[2] = r0.z;
        out.m[3] = r1.x; out.m[4] = r1.y; out.m[5] = r1.z;
        out.m[6] = r2.x; out.m[7] = r2.y; out.m[8] = r2.z;
        return out;
    }
    Vec3 row(int i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }
    Vec3 operator*(const Vec3& v) const {
        return {row(0).dot(v), row(1).dot(v), row(2).dot(v)};
    }
    Mat3 transposed() const {
        Mat3 out;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out.m[3 * c + r] = m[3 * r + c];
        return out;
    }
    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

}  // namespace hullbench
