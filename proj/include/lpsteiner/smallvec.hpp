#pragma once

// Fixed-capacity vectors for ambient dimension n in {2, 3}.  The third
// coordinate is simply 0 in the planar case, so one type serves both.

#include <array>
#include <cassert>
#include <cmath>

namespace lpsteiner {

using Vec3 = std::array<double, 3>;

inline Vec3 vec(double x, double y, double z = 0.0) { return {x, y, z}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 normalized(const Vec3& a) {
    double n = norm(a);
    assert(n > 0.0);
    return (1.0 / n) * a;
}

// 3x3 matrix acting on Vec3 (used for rotations/reflections); row-major.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Vec3 mat_apply(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

inline Mat3 mat_transpose(const Mat3& m) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

inline Mat3 mat_identity() {
    return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

// Deviation of Q^T Q from the identity in max norm (orthogonality check).
inline double orthogonality_defect(const Mat3& q) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += q[k][i] * q[k][j];
            worst = std::max(worst, std::fabs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

// Eigenvalues of a symmetric 2x2 matrix [[a, b], [b, c]], ascending.
inline std::array<double, 2> sym2_eigenvalues(double a, double b, double c) {
    double tr = a + c;
    double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

}  // namespace lpsteiner
