#pragma once

// Convex-body representation: support function plus a list of boundary
// regions with full second-order data ("jets").
//
// A body lives in R^n, n in {2, 3}, and contains the origin in its interior.
// Its boundary is split into regions, each parametrised over an axis-aligned
// box (an interval for n = 2, a rectangle for n = 3).  A region evaluates, at
// a parameter point, the boundary point x, the outer unit normal N, the
// principal curvatures (ascending), the normalized elementary symmetric
// functions H_0..H_{n-1} of those curvatures, and <x, N>; plus the surface
// measure density dH^{n-1}/dparam.
//
// Strictly convex smooth bodies additionally expose the support-function
// route: sphere_jet(u) returns the support value and the principal radii of
// curvature at the boundary point whose outer normal is u (the reverse
// second-order data), independent of any boundary parametrisation.

#include "lpsteiner/smallvec.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpsteiner {

enum class Smoothness { C2Plus, RollingClass, PiecewiseSmooth, Polytope };

struct SphereJet {
    int n = 2;
    double h = 0.0;                     // support value at u
    std::array<double, 2> radii{};      // n-1 principal radii, ascending
    std::array<double, 3> s{};          // s_0..s_{n-1}, normalized elem. symm. of radii
};

struct BoundaryJet {
    int n = 2;
    Vec3 x{};                           // boundary point
    Vec3 normal{};                      // outer unit normal
    std::array<double, 2> curvatures{}; // n-1 principal curvatures, ascending
    std::array<double, 3> H{};          // H_0..H_{n-1}
    double support_dot = 0.0;           // <x, normal>
};

inline void fill_symmetric_functions(int n, const std::array<double, 2>& vals,
                                     std::array<double, 3>& out) {
    out[0] = 1.0;
    if (n == 2) {
        out[1] = vals[0];
        out[2] = 0.0;
    } else {
        out[1] = 0.5 * (vals[0] + vals[1]);
        out[2] = vals[0] * vals[1];
    }
}

inline SphereJet make_sphere_jet(int n, double h, std::array<double, 2> radii) {
    SphereJet j;
    j.n = n;
    j.h = h;
    if (n == 3 && radii[0] > radii[1]) std::swap(radii[0], radii[1]);
    j.radii = radii;
    fill_symmetric_functions(n, j.radii, j.s);
    return j;
}

inline BoundaryJet make_boundary_jet(int n, const Vec3& x, const Vec3& normal,
                                     std::array<double, 2> curvatures) {
    BoundaryJet j;
    j.n = n;
    j.x = x;
    j.normal = normal;
    if (n == 3 && curvatures[0] > curvatures[1]) std::swap(curvatures[0], curvatures[1]);
    j.curvatures = curvatures;
    fill_symmetric_functions(n, j.curvatures, j.H);
    j.support_dot = dot(x, normal);
    return j;
}

struct Region {
    std::string label;
    int pdim = 1;                      // parameters used (1 or 2)
    std::array<double, 2> lo{}, hi{};
    bool flat = false;                 // exactly flat piece (all curvatures 0)
    std::function<BoundaryJet(double, double)> jet;
    std::function<double(double, double)> density;  // dH^{n-1} / dparam
};

struct Body {
    int n = 2;
    Smoothness smoothness = Smoothness::PiecewiseSmooth;
    std::vector<Region> regions;

    // 1-homogeneous support function, defined for every nonzero argument.
    std::function<double(const Vec3&)> support;

    // Optional routes; null when the body does not admit them.
    std::function<SphereJet(const Vec3&)> sphere_jet;       // strictly convex C^2
    std::function<Vec3(const Vec3&)> gauss_point;           // u -> boundary point
    std::function<double(const Vec3&)> radial;              // radial function rho(u)
    std::function<Body(double)> add_ball;                   // outer parallel body

    double rolling_inner = 0.0;
    double rolling_outer = std::numeric_limits<double>::infinity();
    double inball = 0.0;      // radius of the centered inscribed ball (= min support)
    double circum = 0.0;      // radius of the centered circumscribed ball (= max support)
    std::string spec;         // catalog identifier this body was built from
};

// ---------------------------------------------------------------------------
// Direction handling

inline Vec3 unit_direction(int n, Vec3 u) {
    if (n == 2) u[2] = 0.0;
    double nu = norm(u);
    if (!(nu > 0.0)) throw std::invalid_argument("direction must be nonzero");
    return (1.0 / nu) * u;
}

inline Vec3 sphere_point(int n, double a, double b) {
    if (n == 2) return {std::cos(a), std::sin(a), 0.0};
    double st = std::sin(a);
    return {st * std::cos(b), st * std::sin(b), std::cos(a)};
}

// ---------------------------------------------------------------------------
// Support-function second-order data by central finite differences.
//
// Differentiates the 1-homogeneous extension of h along a tangent frame at u;
// the restriction of that Hessian to the tangent plane has the principal
// radii of curvature as eigenvalues.  Step 1e-5 with one Richardson pass
// (combines steps d and d/2 to cancel the leading error term).

namespace detail {

inline void tangent_frame(int n, const Vec3& u, Vec3& t1, Vec3& t2) {
    if (n == 2) {
        t1 = {-u[1], u[0], 0.0};
        t2 = {0.0, 0.0, 0.0};
        return;
    }
    int least = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(u[i]) < std::fabs(u[least])) least = i;
    Vec3 e{};
    e[least] = 1.0;
    t1 = normalized(cross(u, e));
    t2 = cross(u, t1);
}

inline double second_diff(const std::function<double(const Vec3&)>& h, const Vec3& u,
                          const Vec3& d1, const Vec3& d2, double step) {
    auto once = [&](double s) {
        if (&d1 == &d2)
            return (h(u + s * d1) - 2.0 * h(u) + h(u - s * d1)) / (s * s);
        return (h(u + s * (d1 + d2)) - h(u + s * (d1 - d2)) - h(u - s * (d1 - d2)) +
                h(u - s * (d1 + d2))) /
               (4.0 * s * s);
    };
    double a = once(step), b = once(0.5 * step);
    return (4.0 * b - a) / 3.0;  // Richardson in step^2
}

}  // namespace detail

inline SphereJet sphere_jet_fd(int n, const std::function<double(const Vec3&)>& support,
                               const Vec3& dir, double step = 1e-5) {
    Vec3 u = unit_direction(n, dir);
    Vec3 t1, t2;
    detail::tangent_frame(n, u, t1, t2);
    std::array<double, 2> radii{};
    if (n == 2) {
        radii[0] = detail::second_diff(support, u, t1, t1, step);
    } else {
        double m11 = detail::second_diff(support, u, t1, t1, step);
        double m22 = detail::second_diff(support, u, t2, t2, step);
        double m12 = detail::second_diff(support, u, t1, t2, step);
        auto ev = sym2_eigenvalues(m11, m12, m22);
        radii = {ev[0], ev[1]};
    }
    return make_sphere_jet(n, support(u), radii);
}

// ---------------------------------------------------------------------------
// Extrema of functions on the direction sphere (deterministic zooming grids).

namespace detail {

template <typename F>
double sphere_max_2d(F&& f, int coarse, int zoom_rounds) {
    double best = -std::numeric_limits<double>::infinity(), arg = 0.0;
    for (int i = 0; i < coarse; ++i) {
        double t = 2.0 * M_PI * (i + 0.5) / coarse;
        double v = f(sphere_point(2, t, 0.0));
        if (v > best) { best = v; arg = t; }
    }
    double half = 2.0 * M_PI / coarse;
    for (int round = 0; round < zoom_rounds; ++round) {
        double lo = arg - half, hi = arg + half;
        for (int i = 0; i <= 64; ++i) {
            double t = lo + (hi - lo) * i / 64.0;
            double v = f(sphere_point(2, t, 0.0));
            if (v > best) { best = v; arg = t; }
        }
        half /= 16.0;
    }
    return best;
}

template <typename F>
double sphere_max_3d(F&& f, int coarse, int zoom_rounds) {
    double best = -std::numeric_limits<double>::infinity(), at = 0.0, bp = 0.0;
    for (int i = 0; i < coarse; ++i) {
        double th = M_PI * (i + 0.5) / coarse;
        for (int j = 0; j < 2 * coarse; ++j) {
            double ph = 2.0 * M_PI * (j + 0.5) / (2 * coarse);
            double v = f(sphere_point(3, th, ph));
            if (v > best) { best = v; at = th; bp = ph; }
        }
    }
    double ht = M_PI / coarse, hp = M_PI / coarse;
    for (int round = 0; round < zoom_rounds; ++round) {
        double t0 = at - ht, t1 = at + ht, p0 = bp - hp, p1 = bp + hp;
        for (int i = 0; i <= 16; ++i)
            for (int j = 0; j <= 16; ++j) {
                double th = t0 + (t1 - t0) * i / 16.0;
                double ph = p0 + (p1 - p0) * j / 16.0;
                double v = f(sphere_point(3, th, ph));
                if (v > best) { best = v; at = th; bp = ph; }
            }
        ht /= 8.0;
        hp /= 8.0;
    }
    return best;
}

}  // namespace detail

template <typename F>
double sphere_max(int n, F&& f, int coarse = 512, int zoom_rounds = 4) {
    return n == 2 ? detail::sphere_max_2d(f, coarse, zoom_rounds)
                  : detail::sphere_max_3d(f, n == 3 ? std::min(coarse, 160) : coarse,
                                          zoom_rounds);
}

template <typename F>
double sphere_min(int n, F&& f, int coarse = 512, int zoom_rounds = 4) {
    return -sphere_max(n, [&](const Vec3& u) { return -f(u); }, coarse, zoom_rounds);
}

inline double support_min(const Body& b) {
    return sphere_min(b.n, [&](const Vec3& u) { return b.support(u); });
}

inline double support_max(const Body& b) {
    return sphere_max(b.n, [&](const Vec3& u) { return b.support(u); });
}

// Hausdorff distance = sup over directions of |h_A - h_B|.
inline double hausdorff_distance(const Body& a, const Body& b) {
    if (a.n != b.n) throw std::invalid_argument("hausdorff_distance: dimension mismatch");
    return sphere_max(a.n, [&](const Vec3& u) { return std::fabs(a.support(u) - b.support(u)); });
}

// ---------------------------------------------------------------------------
// Rigid motions and scalings

inline Mat3 rotation2d(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return Mat3{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
}

// Deterministic orthogonal matrix from a seed: Gram-Schmidt on Gaussian
// columns.  For n = 2 the third axis is fixed.  reflect flips one axis, so
// the result has determinant -1.
inline Mat3 random_orthogonal(int n, unsigned seed, bool reflect = false) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    if (n == 2) {
        std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
        Mat3 q = rotation2d(ang(rng));
        if (reflect) {
            for (int i = 0; i < 3; ++i) q[i][1] = -q[i][1];
        }
        return q;
    }
    std::array<Vec3, 3> cols;
    for (int c = 0; c < 3; ++c) {
        Vec3 v{g(rng), g(rng), g(rng)};
        for (int prev = 0; prev < c; ++prev) v = v - dot(v, cols[prev]) * cols[prev];
        cols[c] = normalized(v);
    }
    if (dot(cols[0], cross(cols[1], cols[2])) < 0.0) cols[2] = -1.0 * cols[2];
    if (reflect) cols[2] = -1.0 * cols[2];
    Mat3 q{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) q[r][c] = cols[c][r];
    return q;
}

inline Body scale_body(const Body& b, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("scale_body: factor must be positive");
    Body out = b;
    out.regions.clear();
    int n = b.n;
    for (const Region& r : b.regions) {
        Region s = r;
        auto jet0 = r.jet;
        s.jet = [jet0, a, n](double x, double y) {
            BoundaryJet j = jet0(x, y);
            std::array<double, 2> k = j.curvatures;
            k[0] /= a;
            k[1] /= a;
            return make_boundary_jet(n, a * j.x, j.normal, k);
        };
        auto den0 = r.density;
        double dscale = (n == 2) ? a : a * a;
        s.density = [den0, dscale](double x, double y) { return dscale * den0(x, y); };
        out.regions.push_back(std::move(s));
    }
    auto sup0 = b.support;
    out.support = [sup0, a](const Vec3& v) { return a * sup0(v); };
    if (b.sphere_jet) {
        auto sj0 = b.sphere_jet;
        out.sphere_jet = [sj0, a, n](const Vec3& u) {
            SphereJet j = sj0(u);
            return make_sphere_jet(n, a * j.h, {a * j.radii[0], a * j.radii[1]});
        };
    }
    if (b.gauss_point) {
        auto g0 = b.gauss_point;
        out.gauss_point = [g0, a](const Vec3& u) { return a * g0(u); };
    }
    if (b.radial) {
        auto r0 = b.radial;
        out.radial = [r0, a](const Vec3& u) { return a * r0(u); };
    }
    if (b.add_ball) {
        auto ab0 = b.add_ball;
        out.add_ball = [ab0, a](double t) { return scale_body(ab0(t / a), a); };
    }
    out.rolling_inner = b.rolling_inner * a;
    out.rolling_outer = b.rolling_outer * a;
    out.inball = b.inball * a;
    out.circum = b.circum * a;
    out.spec = "scaled(" + b.spec + ")";
    return out;
}

inline Body rotate_body(const Body& b, const Mat3& q) {
    if (orthogonality_defect(q) > 1e-12)
        throw std::invalid_argument("rotate_body: matrix is not orthogonal");
    if (b.n == 2) {
        double off = std::max(std::max(std::fabs(q[0][2]), std::fabs(q[1][2])),
                              std::max(std::fabs(q[2][0]), std::fabs(q[2][1])));
        if (off > 1e-12)
            throw std::invalid_argument("rotate_body: planar body needs a planar map");
    }
    Mat3 qt = mat_transpose(q);
    Body out = b;
    out.regions.clear();
    int n = b.n;
    for (const Region& r : b.regions) {
        Region s = r;
        auto jet0 = r.jet;
        s.jet = [jet0, q, n](double x, double y) {
            BoundaryJet j = jet0(x, y);
            return make_boundary_jet(n, mat_apply(q, j.x), mat_apply(q, j.normal),
                                     j.curvatures);
        };
        out.regions.push_back(std::move(s));
    }
    auto sup0 = b.support;
    out.support = [sup0, qt](const Vec3& v) { return sup0(mat_apply(qt, v)); };
    if (b.sphere_jet) {
        auto sj0 = b.sphere_jet;
        out.sphere_jet = [sj0, qt](const Vec3& u) { return sj0(mat_apply(qt, u)); };
    }
    if (b.gauss_point) {
        auto g0 = b.gauss_point;
        out.gauss_point = [g0, q, qt](const Vec3& u) {
            return mat_apply(q, g0(mat_apply(qt, u)));
        };
    }
    if (b.radial) {
        auto r0 = b.radial;
        out.radial = [r0, qt](const Vec3& u) { return r0(mat_apply(qt, u)); };
    }
    if (b.add_ball) {
        auto ab0 = b.add_ball;
        out.add_ball = [ab0, q](double t) { return rotate_body(ab0(t), q); };
    }
    out.spec = "rotated(" + b.spec + ")";
    return out;
}

inline Body translate_body(const Body& b, const Vec3& v) {
    double shift = norm(v);
    if (shift >= b.inball)
        throw std::invalid_argument("translate_body: origin would leave the interior");
    Body out = b;
    out.regions.clear();
    int n = b.n;
    for (const Region& r : b.regions) {
        Region s = r;
        auto jet0 = r.jet;
        s.jet = [jet0, v, n](double x, double y) {
            BoundaryJet j = jet0(x, y);
            return make_boundary_jet(n, j.x + v, j.normal, j.curvatures);
        };
        out.regions.push_back(std::move(s));
    }
    auto sup0 = b.support;
    out.support = [sup0, v](const Vec3& u) { return sup0(u) + dot(v, u); };
    if (b.sphere_jet) {
        auto sj0 = b.sphere_jet;
        out.sphere_jet = [sj0, v, n](const Vec3& u) {
            SphereJet j = sj0(u);
            Vec3 un = unit_direction(n, u);
            return make_sphere_jet(n, j.h + dot(v, un), j.radii);
        };
    }
    if (b.gauss_point) {
        auto g0 = b.gauss_point;
        out.gauss_point = [g0, v](const Vec3& u) { return g0(u) + v; };
    }
    out.radial = nullptr;  // no closed form after translation
    if (b.add_ball) {
        auto ab0 = b.add_ball;
        out.add_ball = [ab0, v](double t) { return translate_body(ab0(t), v); };
    }
    out.inball = b.inball - shift;
    out.circum = b.circum + shift;
    out.spec = "translated(" + b.spec + ")";
    return out;
}

// Outer parallel body K + t B.  Dispatches to the catalog-specific builder.
inline Body minkowski_add_ball(const Body& b, double t) {
    if (t < 0.0) throw std::invalid_argument("minkowski_add_ball: t must be >= 0");
    if (!b.add_ball)
        throw std::invalid_argument("minkowski_add_ball: not available for this body");
    return b.add_ball(t);
}

// Polar body K^*: only the support/radial pair is carried (h_{K*} = 1/rho_K,
// rho_{K*} = 1/h_K); no boundary regions are synthesised.
inline Body polar_of(const Body& b) {
    Body out;
    out.n = b.n;
    out.smoothness = Smoothness::PiecewiseSmooth;
    auto sup0 = b.support;
    auto rad0 = b.radial;
    int n = b.n;
    if (rad0)
        out.support = [rad0, n](const Vec3& v) {
            return norm(v) / rad0(unit_direction(n, v));
        };
    out.radial = [sup0, n](const Vec3& u) { return 1.0 / sup0(unit_direction(n, u)); };
    out.inball = 1.0 / b.circum;
    out.circum = 1.0 / b.inball;
    out.spec = "polar(" + b.spec + ")";
    return out;
}

}  // namespace lpsteiner
