#pragma once

// Catalog of concrete bodies.  Each maker fills in boundary regions with
// analytic jets plus whichever of the optional routes (support jets, radial
// function, Gauss point, parallel body) the body admits.
//
// Two independent computation routes exist on smooth bodies by design: the
// boundary regions carry curvatures derived from a position parametrisation
// (fundamental forms / plane-curve formulas), while sphere_jet derives radii
// from the support function.  Tests compare them through the reciprocity
// relations; nothing is shared between the two code paths.

#include "lpsteiner/body.hpp"
#include "lpsteiner/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lpsteiner {

// ---------------------------------------------------------------------------
// Shared helper: jet of a 3D parametrised patch from first/second derivatives
// and a precomputed outward unit normal.  Principal curvatures are the
// eigenvalues of the Weingarten map, obtained from the fundamental forms.

inline BoundaryJet patch_jet(const Vec3& x, const Vec3& xu, const Vec3& xv,
                             const Vec3& xuu, const Vec3& xuv, const Vec3& xvv,
                             const Vec3& nrm) {
    double E = dot(xu, xu), F = dot(xu, xv), G = dot(xv, xv);
    double W2 = E * G - F * F;
    double L = -dot(nrm, xuu), M = -dot(nrm, xuv), N = -dot(nrm, xvv);
    double tr = (G * L - 2.0 * F * M + E * N) / W2;
    double det = (L * N - M * M) / W2;
    double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return make_boundary_jet(3, x, nrm, {0.5 * (tr - disc), 0.5 * (tr + disc)});
}

// ---------------------------------------------------------------------------
// Ball

inline Body make_ball(int n, double r, Vec3 center = {0, 0, 0}) {
    if (n != 2 && n != 3) throw std::invalid_argument("make_ball: n must be 2 or 3");
    if (!(r > 0.0)) throw std::invalid_argument("make_ball: radius must be positive");
    if (n == 2) center[2] = 0.0;
    double off = norm(center);
    if (off >= r) throw std::invalid_argument("make_ball: origin must be interior");

    Body b;
    b.n = n;
    b.smoothness = Smoothness::C2Plus;
    b.support = [r, center](const Vec3& v) { return r * norm(v) + dot(center, v); };
    b.sphere_jet = [r, center, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        return make_sphere_jet(n, r + dot(center, u), {r, r});
    };
    b.gauss_point = [r, center, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        return center + r * u;
    };
    b.radial = [r, center, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        double uc = dot(u, center);
        return uc + std::sqrt(r * r - norm2(center) + uc * uc);
    };
    if (n == 2) {
        Region reg;
        reg.label = "circle";
        reg.pdim = 1;
        reg.lo = {0.0, 0.0};
        reg.hi = {2.0 * M_PI, 0.0};
        reg.jet = [r, center](double th, double) {
            Vec3 u = {std::cos(th), std::sin(th), 0.0};
            return make_boundary_jet(2, center + r * u, u, {1.0 / r, 0.0});
        };
        reg.density = [r](double, double) { return r; };
        b.regions.push_back(std::move(reg));
    } else {
        Region reg;
        reg.label = "sphere";
        reg.pdim = 2;
        reg.lo = {0.0, 0.0};
        reg.hi = {M_PI, 2.0 * M_PI};
        reg.jet = [r, center](double th, double ph) {
            Vec3 u = sphere_point(3, th, ph);
            return make_boundary_jet(3, center + r * u, u, {1.0 / r, 1.0 / r});
        };
        reg.density = [r](double th, double) { return r * r * std::sin(th); };
        b.regions.push_back(std::move(reg));
    }
    b.add_ball = [n, r, center](double t) { return make_ball(n, r + t, center); };
    b.rolling_inner = r;
    b.rolling_outer = r;
    b.inball = r - off;
    b.circum = r + off;
    std::ostringstream os;
    os << "ball:" << n << ":r=" << fmt17(r);
    if (off > 0.0) {
        os << ",cx=" << fmt17(center[0]) << ",cy=" << fmt17(center[1]);
        if (n == 3) os << ",cz=" << fmt17(center[2]);
    }
    b.spec = os.str();
    return b;
}

// ---------------------------------------------------------------------------
// Outer parallel body of a smooth strictly convex body, built on the normal
// parametrisation: the point with outer normal u is gauss_point(u) + t u, and
// the surface density is the product of the shifted radii.

inline Body offset_of_smooth(const Body& base, double t) {
    if (!base.sphere_jet || !base.gauss_point)
        throw std::invalid_argument("offset_of_smooth: needs support jets");
    Body b;
    int n = base.n;
    b.n = n;
    b.smoothness = Smoothness::C2Plus;
    auto sj = base.sphere_jet;
    auto gp = base.gauss_point;
    auto sup = base.support;
    b.support = [sup, t](const Vec3& v) { return sup(v) + t * norm(v); };
    b.sphere_jet = [sj, t, n](const Vec3& dir) {
        SphereJet j = sj(dir);
        return make_sphere_jet(n, j.h + t, {j.radii[0] + t, j.radii[1] + t});
    };
    b.gauss_point = [gp, t, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        return gp(u) + t * u;
    };
    if (n == 2) {
        Region reg;
        reg.label = "offset";
        reg.pdim = 1;
        reg.lo = {0.0, 0.0};
        reg.hi = {2.0 * M_PI, 0.0};
        reg.jet = [sj, gp, t](double th, double) {
            Vec3 u = {std::cos(th), std::sin(th), 0.0};
            SphereJet j = sj(u);
            return make_boundary_jet(2, gp(u) + t * u, u, {1.0 / (j.radii[0] + t), 0.0});
        };
        reg.density = [sj, t](double th, double) {
            Vec3 u = {std::cos(th), std::sin(th), 0.0};
            return sj(u).radii[0] + t;
        };
        b.regions.push_back(std::move(reg));
    } else {
        Region reg;
        reg.label = "offset";
        reg.pdim = 2;
        reg.lo = {0.0, 0.0};
        reg.hi = {M_PI, 2.0 * M_PI};
        reg.jet = [sj, gp, t](double th, double ph) {
            Vec3 u = sphere_point(3, th, ph);
            SphereJet j = sj(u);
            return make_boundary_jet(
                3, gp(u) + t * u, u,
                {1.0 / (j.radii[1] + t), 1.0 / (j.radii[0] + t)});
        };
        reg.density = [sj, t](double th, double ph) {
            Vec3 u = sphere_point(3, th, ph);
            SphereJet j = sj(u);
            return (j.radii[0] + t) * (j.radii[1] + t) * std::sin(th);
        };
        b.regions.push_back(std::move(reg));
    }
    Body base_copy = base;
    b.add_ball = [base_copy, t](double t2) { return offset_of_smooth(base_copy, t + t2); };
    b.rolling_inner = base.rolling_inner + t;
    b.rolling_outer = base.rolling_outer + t;
    b.inball = base.inball + t;
    b.circum = base.circum + t;
    b.spec = "offset(" + base.spec + ")";
    return b;
}

// ---------------------------------------------------------------------------
// Ellipsoid, full or cut by one or two hyperplanes orthogonal to a coordinate
// axis.  The curved patch is parametrised with the cut axis as polar axis, so
// every slab is a parameter box; flat disks close the cuts.

namespace detail {

// Curved patch jet in world coordinates.  Axes: polar index i with semi-axis
// C; equatorial indices j1, j2 with semi-axes A, B (j2 unused for n = 2).
struct EllipsoidFrame {
    int n;
    int i, j1, j2;
    double C, A, B;
};

inline BoundaryJet ellipsoid_patch_jet(const EllipsoidFrame& f, double th, double ph) {
    double st = std::sin(th), ct = std::cos(th);
    if (f.n == 2) {
        Vec3 x{};
        x[f.i] = f.C * ct;
        x[f.j1] = f.A * st;
        double w = std::hypot(f.A * ct, f.C * st);
        Vec3 nrm{};
        nrm[f.i] = f.A * ct / w;
        nrm[f.j1] = f.C * st / w;
        double kappa = f.A * f.C / (w * w * w);
        return make_boundary_jet(2, x, nrm, {kappa, 0.0});
    }
    double cp = std::cos(ph), sp = std::sin(ph);
    Vec3 x{}, xu{}, xv{}, xuu{}, xuv{}, xvv{}, grad{};
    x[f.j1] = f.A * st * cp;
    x[f.j2] = f.B * st * sp;
    x[f.i] = f.C * ct;
    xu[f.j1] = f.A * ct * cp;
    xu[f.j2] = f.B * ct * sp;
    xu[f.i] = -f.C * st;
    xv[f.j1] = -f.A * st * sp;
    xv[f.j2] = f.B * st * cp;
    xuu = -1.0 * x;
    xuv[f.j1] = -f.A * ct * sp;
    xuv[f.j2] = f.B * ct * cp;
    xvv[f.j1] = -f.A * st * cp;
    xvv[f.j2] = -f.B * st * sp;
    grad[f.j1] = x[f.j1] / (f.A * f.A);
    grad[f.j2] = x[f.j2] / (f.B * f.B);
    grad[f.i] = x[f.i] / (f.C * f.C);
    return patch_jet(x, xu, xv, xuu, xuv, xvv, normalized(grad));
}

inline double ellipsoid_patch_density(const EllipsoidFrame& f, double th, double ph) {
    double st = std::sin(th), ct = std::cos(th);
    if (f.n == 2) return std::hypot(f.A * ct, f.C * st);
    double cp = std::cos(ph), sp = std::sin(ph);
    Vec3 xu{}, xv{};
    xu[f.j1] = f.A * ct * cp;
    xu[f.j2] = f.B * ct * sp;
    xu[f.i] = -f.C * st;
    xv[f.j1] = -f.A * st * sp;
    xv[f.j2] = f.B * st * cp;
    return norm(cross(xu, xv));
}

}  // namespace detail

// Slab of an ellipsoid: { x in E : lo <= x[axis] <= hi }.  lo = -inf / hi =
// +inf (or values beyond the semi-axis) leave that side uncut.  The origin
// must stay interior, so lo < 0 < hi after clamping.
inline Body make_ellipsoid_slab(const std::vector<double>& axes, int axis, double lo,
                                double hi) {
    int n = static_cast<int>(axes.size());
    if (n != 2 && n != 3)
        throw std::invalid_argument("make_ellipsoid_slab: need 2 or 3 semi-axes");
    for (double a : axes)
        if (!(a > 0.0)) throw std::invalid_argument("make_ellipsoid_slab: semi-axes > 0");
    if (axis < 0 || axis >= n) throw std::invalid_argument("make_ellipsoid_slab: bad axis");
    double cax = axes[static_cast<std::size_t>(axis)];
    bool cut_hi = hi < cax, cut_lo = lo > -cax;
    double chi = std::min(hi, cax), clo = std::max(lo, -cax);
    if (!(clo < 0.0 && 0.0 < chi))
        throw std::invalid_argument("make_ellipsoid_slab: origin must stay interior");

    detail::EllipsoidFrame f;
    f.n = n;
    f.i = axis;
    if (n == 2) {
        f.j1 = 1 - axis;
        f.j2 = 2;  // unused
        f.A = axes[static_cast<std::size_t>(f.j1)];
        f.B = 0.0;
    } else {
        f.j1 = (axis == 0) ? 1 : 0;
        f.j2 = (axis == 2) ? 1 : 2;
        f.A = axes[static_cast<std::size_t>(f.j1)];
        f.B = axes[static_cast<std::size_t>(f.j2)];
    }
    f.C = cax;
    double th_hi = std::acos(std::clamp(chi / cax, -1.0, 1.0));
    double th_lo = std::acos(std::clamp(clo / cax, -1.0, 1.0));

    Body b;
    b.n = n;
    bool full = !cut_hi && !cut_lo;
    b.smoothness = full ? Smoothness::C2Plus : Smoothness::PiecewiseSmooth;

    auto add_patch = [&](double t0, double t1, const std::string& label) {
        if (!(t1 > t0)) return;
        Region reg;
        reg.label = label;
        reg.pdim = (n == 2) ? 1 : 2;
        reg.lo = {t0, 0.0};
        reg.hi = {t1, (n == 2) ? 0.0 : 2.0 * M_PI};
        reg.jet = [f](double th, double ph) { return detail::ellipsoid_patch_jet(f, th, ph); };
        reg.density = [f](double th, double ph) {
            return detail::ellipsoid_patch_density(f, th, ph);
        };
        b.regions.push_back(std::move(reg));
    };
    if (n == 2) {
        // Mirror arcs theta and 2 pi - theta (theta measured from the polar axis).
        add_patch(th_hi, th_lo, "arc");
        add_patch(2.0 * M_PI - th_lo, 2.0 * M_PI - th_hi, "arc-mirror");
    } else {
        add_patch(th_hi, th_lo, "patch");
    }

    auto add_disk = [&](double cut, int sgn) {
        // Flat section disk at x[axis] = cut with outer normal sgn * e_axis.
        double shrink = std::sqrt(std::max(0.0, 1.0 - (cut / cax) * (cut / cax)));
        Vec3 nrm{};
        nrm[f.i] = sgn;
        if (n == 2) {
            double bj = f.A * shrink;
            Region reg;
            reg.label = "chord";
            reg.pdim = 1;
            reg.lo = {-1.0, 0.0};
            reg.hi = {1.0, 0.0};
            reg.flat = true;
            int i = f.i, j1 = f.j1;
            reg.jet = [i, j1, cut, bj, nrm](double s, double) {
                Vec3 x{};
                x[i] = cut;
                x[j1] = s * bj;
                return make_boundary_jet(2, x, nrm, {0.0, 0.0});
            };
            reg.density = [bj](double, double) { return bj; };
            b.regions.push_back(std::move(reg));
        } else {
            double b1 = f.A * shrink, b2 = f.B * shrink;
            Region reg;
            reg.label = "disk";
            reg.pdim = 2;
            reg.lo = {0.0, 0.0};
            reg.hi = {1.0, 2.0 * M_PI};
            reg.flat = true;
            int i = f.i, j1 = f.j1, j2 = f.j2;
            reg.jet = [i, j1, j2, cut, b1, b2, nrm](double q, double psi) {
                Vec3 x{};
                x[i] = cut;
                x[j1] = q * b1 * std::cos(psi);
                x[j2] = q * b2 * std::sin(psi);
                return make_boundary_jet(3, x, nrm, {0.0, 0.0});
            };
            reg.density = [b1, b2](double q, double) { return q * b1 * b2; };
            b.regions.push_back(std::move(reg));
        }
    };
    if (cut_hi) add_disk(chi, +1);
    if (cut_lo) add_disk(clo, -1);

    std::vector<double> ax = axes;
    b.support = [ax, n, axis, clo, chi, cut_hi, cut_lo](const Vec3& v) -> double {
        if (!cut_hi && !cut_lo) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += ax[static_cast<std::size_t>(i)] *
                                              ax[static_cast<std::size_t>(i)] * v[i] * v[i];
            return std::sqrt(s);
        }
        // Support of the slab: maximise <x, v> over the curved patch interior,
        // else the maximiser sits on a section ellipse (boundary of a disk).
        double best = -std::numeric_limits<double>::infinity();
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)] * v[i] * v[i];
        double hfull = std::sqrt(s);
        if (hfull > 0.0) {
            // Touch point of the full ellipsoid: x_i = a_i^2 v_i / hfull.
            double xi = ax[static_cast<std::size_t>(axis)] * ax[static_cast<std::size_t>(axis)] *
                        v[axis] / hfull;
            if (xi >= clo && xi <= chi) best = hfull;
        }
        for (double cut : {chi, clo}) {
            if ((cut == chi && !cut_hi) || (cut == clo && !cut_lo)) continue;
            // Max of <x,v> on the section at x[axis] = cut.
            double shrink = std::sqrt(std::max(
                0.0, 1.0 - (cut / ax[static_cast<std::size_t>(axis)]) *
                              (cut / ax[static_cast<std::size_t>(axis)])));
            double m = cut * v[axis];
            double q = 0.0;
            for (int i = 0; i < n; ++i) {
                if (i == axis) continue;
                double bi = ax[static_cast<std::size_t>(i)] * shrink;
                q += bi * bi * v[i] * v[i];
            }
            best = std::max(best, m + std::sqrt(q));
        }
        return best;
    };

    std::ostringstream os;
    if (full) {
        os << "ellipsoid:";
        for (int i = 0; i < n; ++i)
            os << (i ? "," : "") << fmt17(axes[static_cast<std::size_t>(i)]);
    } else {
        os << "ellipsoid-slab:";
        for (int i = 0; i < n; ++i)
            os << (i ? "," : "") << fmt17(axes[static_cast<std::size_t>(i)]);
        os << ":axis=" << axis << ",lo=" << fmt17(lo) << ",hi=" << fmt17(hi);
    }
    b.spec = os.str();

    if (full) {
        b.sphere_jet = [ax, n](const Vec3& dir) {
            Vec3 u = unit_direction(n, dir);
            Vec3 w{};
            double h2 = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)] * u[i];
                h2 += w[i] * u[i];
            }
            double h = std::sqrt(h2);
            Vec3 t1, t2;
            detail::tangent_frame(n, u, t1, t2);
            auto hess = [&](const Vec3& a, const Vec3& c) {
                double aw = dot(a, w), cw = dot(c, w);
                double aAc = 0.0;
                for (int i = 0; i < n; ++i)
                    aAc += ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)] *
                           a[i] * c[i];
                return (aAc - aw * cw / h2) / h;
            };
            if (n == 2) return make_sphere_jet(2, h, {hess(t1, t1), 0.0});
            auto ev = sym2_eigenvalues(hess(t1, t1), hess(t1, t2), hess(t2, t2));
            return make_sphere_jet(3, h, {ev[0], ev[1]});
        };
        b.gauss_point = [ax, n](const Vec3& dir) {
            Vec3 u = unit_direction(n, dir);
            Vec3 w{};
            double h2 = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)] * u[i];
                h2 += w[i] * u[i];
            }
            return (1.0 / std::sqrt(h2)) * w;
        };
        b.radial = [ax, n](const Vec3& dir) {
            Vec3 u = unit_direction(n, dir);
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                s += u[i] * u[i] /
                     (ax[static_cast<std::size_t>(i)] * ax[static_cast<std::size_t>(i)]);
            return 1.0 / std::sqrt(s);
        };
        double amin = *std::min_element(ax.begin(), ax.end());
        double amax = *std::max_element(ax.begin(), ax.end());
        b.rolling_inner = amin * amin / amax;
        b.rolling_outer = amax * amax / amin;
        b.inball = amin;
        b.circum = amax;
        Body base_marker = b;  // complete except add_ball itself
        b.add_ball = [base_marker](double t) { return offset_of_smooth(base_marker, t); };
    } else {
        double amin = *std::min_element(ax.begin(), ax.end());
        double amax = *std::max_element(ax.begin(), ax.end());
        b.inball = std::min({amin, -clo, chi});
        b.circum = amax;
    }
    return b;
}

inline Body make_ellipsoid(const std::vector<double>& axes) {
    int n = static_cast<int>(axes.size());
    if (n != 2 && n != 3) throw std::invalid_argument("make_ellipsoid: need 2 or 3 semi-axes");
    double inf = std::numeric_limits<double>::infinity();
    return make_ellipsoid_slab(axes, n - 1, -inf, inf);
}

// One cap removed: side "below" keeps x[axis] <= cut (cut > 0), side "above"
// keeps x[axis] >= cut (cut < 0).  A cut at or beyond the semi-axis leaves
// the whole ellipsoid.
inline Body make_capped_ellipsoid(const std::vector<double>& axes, int axis, double cut,
                                  const std::string& side) {
    double inf = std::numeric_limits<double>::infinity();
    Body b;
    if (side == "below")
        b = make_ellipsoid_slab(axes, axis, -inf, cut);
    else if (side == "above")
        b = make_ellipsoid_slab(axes, axis, cut, inf);
    else
        throw std::invalid_argument("make_capped_ellipsoid: side must be below or above");
    std::ostringstream os;
    os << "capped-ellipsoid:";
    for (std::size_t i = 0; i < axes.size(); ++i) os << (i ? "," : "") << fmt17(axes[i]);
    os << ":axis=" << axis << ",cut=" << fmt17(cut) << ",side=" << side;
    b.spec = os.str();
    return b;
}

// ---------------------------------------------------------------------------
// l_r unit ball { sum |x_i|^r <= 1 }, r > 2 (smooth, Gauss curvature vanishes
// where the boundary meets the axes).  Planar boundary uses graph pieces
// x = (1 - y^r)^(1/r) split at the diagonals so every region is smooth up to
// its closed parameter box; the 3D boundary uses the spherical-product
// parametrisation split into octants.

namespace detail {

struct LrGraph {
    double r;
    double g(double w) const { return std::pow(1.0 - std::pow(w, r), 1.0 / r); }
    double gp(double w) const {
        double wr = std::pow(w, r);
        return -std::pow(w, r - 1.0) * std::pow(1.0 - wr, (1.0 - r) / r);
    }
    double kappa(double w) const {
        double wr = std::pow(w, r);
        double g2 = gp(w) * gp(w);
        return (r - 1.0) * std::pow(w, r - 2.0) * std::pow(1.0 - wr, (1.0 - 2.0 * r) / r) /
               std::pow(1.0 + g2, 1.5);
    }
};

inline BoundaryJet lr3_patch_jet(double r, const std::array<double, 3>& sg, double th,
                                 double ph, double* density) {
    // Spherical product with exponent f = 2/r on an open octant.
    double f = 2.0 / r;
    double u = std::sin(th), v = std::cos(th);
    double p = std::cos(ph), q = std::sin(ph);
    auto pw = [](double base, double e) { return std::pow(base, e); };
    double uf = pw(u, f), vf = pw(v, f), pf = pw(p, f), qf = pw(q, f);
    double uf1 = pw(u, f - 1.0), vf1 = pw(v, f - 1.0), pf1 = pw(p, f - 1.0),
           qf1 = pw(q, f - 1.0);
    double uf2 = pw(u, f - 2.0), vf2 = pw(v, f - 2.0), pf2 = pw(p, f - 2.0),
           qf2 = pw(q, f - 2.0);

    Vec3 x = {sg[0] * uf * pf, sg[1] * uf * qf, sg[2] * vf};
    Vec3 xt = {sg[0] * f * uf1 * v * pf, sg[1] * f * uf1 * v * qf, -sg[2] * f * vf1 * u};
    Vec3 xp = {-sg[0] * f * uf * pf1 * q, sg[1] * f * uf * qf1 * p, 0.0};
    double dtt_u = f * ((f - 1.0) * uf2 * v * v - uf);   // d2(u^f)/dth^2
    double dtt_v = f * ((f - 1.0) * vf2 * u * u - vf);   // d2(v^f)/dth^2
    Vec3 xtt = {sg[0] * dtt_u * pf, sg[1] * dtt_u * qf, sg[2] * dtt_v};
    Vec3 xtp = {-sg[0] * f * uf1 * v * f * pf1 * q, sg[1] * f * uf1 * v * f * qf1 * p, 0.0};
    double dpp_p = f * ((f - 1.0) * pf2 * q * q - pf);
    double dpp_q = f * ((f - 1.0) * qf2 * p * p - qf);
    Vec3 xpp = {sg[0] * uf * dpp_p, sg[1] * uf * dpp_q, 0.0};

    Vec3 grad = {sg[0] * pw(std::fabs(x[0]), r - 1.0), sg[1] * pw(std::fabs(x[1]), r - 1.0),
                 sg[2] * pw(std::fabs(x[2]), r - 1.0)};
    Vec3 nrm = normalized(grad);
    if (density) *density = norm(cross(xt, xp));
    return patch_jet(x, xt, xp, xtt, xtp, xpp, nrm);
}

}  // namespace detail

inline Body make_lr_ball(int n, double r) {
    if (n != 2 && n != 3) throw std::invalid_argument("make_lr_ball: n must be 2 or 3");
    if (!(r > 2.0)) throw std::invalid_argument("make_lr_ball: exponent r must exceed 2");
    Body b;
    b.n = n;
    b.smoothness = Smoothness::PiecewiseSmooth;  // curvature vanishes on the axes
    double rd = r / (r - 1.0);  // dual exponent
    b.support = [rd, n](const Vec3& v) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(std::fabs(v[i]), rd);
        return std::pow(s, 1.0 / rd);
    };
    b.radial = [r, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(std::fabs(u[i]), r);
        return std::pow(s, -1.0 / r);
    };
    auto sup = b.support;
    b.sphere_jet = [sup, n](const Vec3& dir) { return sphere_jet_fd(n, sup, dir); };
    b.gauss_point = [rd, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(std::fabs(u[i]), rd);
        double scale = std::pow(s, 1.0 / rd - 1.0);
        Vec3 x{};
        for (int i = 0; i < n; ++i)
            x[i] = scale * std::pow(std::fabs(u[i]), rd - 1.0) * (u[i] < 0 ? -1.0 : 1.0);
        return x;
    };

    if (n == 2) {
        double wmax = std::pow(0.5, 1.0 / r);
        detail::LrGraph gr{r};
        for (int sx : {+1, -1})
            for (int sy : {+1, -1})
                for (int graph_x : {0, 1}) {
                    Region reg;
                    reg.label = "graph";
                    reg.pdim = 1;
                    reg.lo = {0.0, 0.0};
                    reg.hi = {wmax, 0.0};
                    double fx = sx, fy = sy;
                    bool gx = graph_x != 0;
                    reg.jet = [gr, fx, fy, gx](double w, double) {
                        double g = gr.g(w), gp = gr.gp(w), k = gr.kappa(w);
                        double speed = std::sqrt(1.0 + gp * gp);
                        Vec3 x, nrm;
                        if (gx) {  // x = fx*g(w), y = fy*w
                            x = {fx * g, fy * w, 0.0};
                            nrm = {fx / speed, -fy * gp / speed, 0.0};
                        } else {  // x = fx*w, y = fy*g(w)
                            x = {fx * w, fy * g, 0.0};
                            nrm = {-fx * gp / speed, fy / speed, 0.0};
                        }
                        return make_boundary_jet(2, x, nrm, {k, 0.0});
                    };
                    reg.density = [gr](double w, double) {
                        double gp = gr.gp(w);
                        return std::sqrt(1.0 + gp * gp);
                    };
                    b.regions.push_back(std::move(reg));
                }
    } else {
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1}) {
                    Region reg;
                    reg.label = "octant";
                    reg.pdim = 2;
                    reg.lo = {0.0, 0.0};
                    reg.hi = {0.5 * M_PI, 0.5 * M_PI};
                    std::array<double, 3> sg = {double(s1), double(s2), double(s3)};
                    double rr = r;
                    reg.jet = [rr, sg](double th, double ph) {
                        return detail::lr3_patch_jet(rr, sg, th, ph, nullptr);
                    };
                    reg.density = [rr, sg](double th, double ph) {
                        double d = 0.0;
                        detail::lr3_patch_jet(rr, sg, th, ph, &d);
                        return d;
                    };
                    b.regions.push_back(std::move(reg));
                }
    }
    // r > 2: the unit ball is inscribed (touching at the axes) and the radial
    // maximum sits on the main diagonal.
    b.inball = 1.0;
    b.circum = std::pow(static_cast<double>(n), 0.5 - 1.0 / r);
    std::ostringstream os;
    os << "lr-ball:" << n << ":r=" << fmt17(r);
    b.spec = os.str();
    Body base_copy = b;  // add_ball via the generic smooth offset
    b.add_ball = [base_copy](double t) { return offset_of_smooth(base_copy, t); };
    return b;
}

// ---------------------------------------------------------------------------
// Rounded box: cube of half-width w, outer-rounded at distance rho (that is,
// the Minkowski sum [-w, w]^n + rho B_2).  w = 0 degenerates to a ball,
// rho = 0 is rejected (use make_box).

inline Body make_rounded_box(int n, double w, double rho) {
    if (n != 2 && n != 3) throw std::invalid_argument("make_rounded_box: n must be 2 or 3");
    if (!(w >= 0.0) || !(rho > 0.0))
        throw std::invalid_argument("make_rounded_box: need w >= 0 and rho > 0");
    Body b;
    b.n = n;
    b.smoothness = Smoothness::PiecewiseSmooth;
    b.support = [w, rho, n](const Vec3& v) {
        double l1 = 0.0;
        for (int i = 0; i < n; ++i) l1 += std::fabs(v[i]);
        return w * l1 + rho * norm(v);
    };
    b.sphere_jet = [w, rho, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        for (int i = 0; i < n; ++i)
            if (std::fabs(u[i]) <= 1e-14)
                throw std::domain_error(
                    "rounded box: direction maps into a flat face or edge");
        double l1 = std::fabs(u[0]) + std::fabs(u[1]) + (n == 3 ? std::fabs(u[2]) : 0.0);
        return make_sphere_jet(n, w * l1 + rho, {rho, rho});
    };
    b.gauss_point = [w, rho, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        Vec3 x{};
        for (int i = 0; i < n; ++i) {
            if (std::fabs(u[i]) <= 1e-14)
                throw std::domain_error(
                    "rounded box: direction maps into a flat face or edge");
            x[i] = w * (u[i] < 0 ? -1.0 : 1.0) + rho * u[i];
        }
        return x;
    };
    b.radial = [w, rho, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        double lo = 0.0, hi = w * std::sqrt(static_cast<double>(n)) + rho + 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double mid = 0.5 * (lo + hi);
            double d2 = 0.0;
            for (int i = 0; i < n; ++i) {
                double e = std::max(0.0, mid * std::fabs(u[i]) - w);
                d2 += e * e;
            }
            (d2 <= rho * rho ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    auto push_flat_face = [&](int axis, int sgn) {
        Region reg;
        reg.label = "face";
        reg.pdim = (n == 2) ? 1 : 2;
        reg.lo = {-w, -w};
        reg.hi = {w, w};
        reg.flat = true;
        Vec3 nrm{};
        nrm[axis] = sgn;
        double c = sgn * (w + rho);
        int j1 = (axis == 0) ? 1 : 0;
        int j2 = (axis == 2) ? 1 : 2;
        int nn = n;
        reg.jet = [axis, j1, j2, c, nrm, nn](double s, double t) {
            Vec3 x{};
            x[axis] = c;
            x[j1] = s;
            if (nn == 3) x[j2] = t;
            return make_boundary_jet(nn, x, nrm, {0.0, 0.0});
        };
        reg.density = [](double, double) { return 1.0; };
        b.regions.push_back(std::move(reg));
    };
    for (int axis = 0; axis < n; ++axis)
        for (int sgn : {+1, -1})
            if (w > 0.0) push_flat_face(axis, sgn);

    if (n == 2) {
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                Region reg;
                reg.label = "corner-arc";
                reg.pdim = 1;
                reg.lo = {0.0, 0.0};
                reg.hi = {0.5 * M_PI, 0.0};
                double f1 = s1, f2 = s2;
                reg.jet = [w, rho, f1, f2](double al, double) {
                    Vec3 u = {f1 * std::cos(al), f2 * std::sin(al), 0.0};
                    Vec3 x = {f1 * w + rho * u[0], f2 * w + rho * u[1], 0.0};
                    return make_boundary_jet(2, x, u, {1.0 / rho, 0.0});
                };
                reg.density = [rho](double, double) { return rho; };
                b.regions.push_back(std::move(reg));
            }
    } else {
        // Quarter cylinders along each edge direction.
        for (int k = 0; k < 3; ++k) {
            int i = (k + 1) % 3, j = (k + 2) % 3;
            for (int si : {+1, -1})
                for (int sj : {+1, -1}) {
                    if (w == 0.0) continue;
                    Region reg;
                    reg.label = "edge-cylinder";
                    reg.pdim = 2;
                    reg.lo = {0.0, -w};
                    reg.hi = {0.5 * M_PI, w};
                    double fi = si, fj = sj;
                    reg.jet = [w, rho, i, j, k, fi, fj](double al, double z) {
                        Vec3 u{};
                        u[i] = fi * std::cos(al);
                        u[j] = fj * std::sin(al);
                        Vec3 x{};
                        x[i] = fi * w + rho * u[i];
                        x[j] = fj * w + rho * u[j];
                        x[k] = z;
                        return make_boundary_jet(3, x, u, {0.0, 1.0 / rho});
                    };
                    reg.density = [rho](double, double) { return rho; };
                    b.regions.push_back(std::move(reg));
                }
        }
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1}) {
                    Region reg;
                    reg.label = "corner-sphere";
                    reg.pdim = 2;
                    reg.lo = {0.0, 0.0};
                    reg.hi = {0.5 * M_PI, 0.5 * M_PI};
                    Vec3 sg = {double(s1), double(s2), double(s3)};
                    reg.jet = [w, rho, sg](double th, double ph) {
                        Vec3 u = {sg[0] * std::sin(th) * std::cos(ph),
                                  sg[1] * std::sin(th) * std::sin(ph), sg[2] * std::cos(th)};
                        Vec3 x = w * sg + rho * u;
                        return make_boundary_jet(3, x, u, {1.0 / rho, 1.0 / rho});
                    };
                    reg.density = [rho](double th, double) {
                        return rho * rho * std::sin(th);
                    };
                    b.regions.push_back(std::move(reg));
                }
    }

    b.add_ball = [n, w, rho](double t) { return make_rounded_box(n, w, rho + t); };
    b.rolling_inner = rho;
    b.inball = w + rho;
    b.circum = w * std::sqrt(static_cast<double>(n)) + rho;
    std::ostringstream os;
    os << "rounded-box:" << n << ":w=" << fmt17(w) << ",rho=" << fmt17(rho);
    b.spec = os.str();
    return b;
}

// The one-parameter family (1 - 1/l) cube + (1/l) ball, l >= 1, which slides
// from the unit ball (l = 1) toward the unit cube as l grows.
inline Body make_rounded_cube(int n, double l) {
    if (!(l >= 1.0)) throw std::invalid_argument("make_rounded_cube: need l >= 1");
    Body b = make_rounded_box(n, 1.0 - 1.0 / l, 1.0 / l);
    std::ostringstream os;
    os << "rounded-cube:" << n << ":l=" << fmt17(l);
    b.spec = os.str();
    return b;
}

// ---------------------------------------------------------------------------
// Axis-aligned cube [-w, w]^n (polytope: flat faces only).

inline Body make_box(int n, double w) {
    if (n != 2 && n != 3) throw std::invalid_argument("make_box: n must be 2 or 3");
    if (!(w > 0.0)) throw std::invalid_argument("make_box: half-width must be positive");
    Body b;
    b.n = n;
    b.smoothness = Smoothness::Polytope;
    b.support = [w, n](const Vec3& v) {
        double l1 = 0.0;
        for (int i = 0; i < n; ++i) l1 += std::fabs(v[i]);
        return w * l1;
    };
    b.radial = [w, n](const Vec3& dir) {
        Vec3 u = unit_direction(n, dir);
        double m = 0.0;
        for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(u[i]));
        return w / m;
    };
    for (int axis = 0; axis < n; ++axis)
        for (int sgn : {+1, -1}) {
            Region reg;
            reg.label = "face";
            reg.pdim = (n == 2) ? 1 : 2;
            reg.lo = {-w, -w};
            reg.hi = {w, w};
            reg.flat = true;
            Vec3 nrm{};
            nrm[axis] = sgn;
            double c = sgn * w;
            int j1 = (axis == 0) ? 1 : 0;
            int j2 = (axis == 2) ? 1 : 2;
            int nn = n;
            reg.jet = [axis, j1, j2, c, nrm, nn](double s, double t) {
                Vec3 x{};
                x[axis] = c;
                x[j1] = s;
                if (nn == 3) x[j2] = t;
                return make_boundary_jet(nn, x, nrm, {0.0, 0.0});
            };
            reg.density = [](double, double) { return 1.0; };
            b.regions.push_back(std::move(reg));
        }
    b.add_ball = [n, w](double t) {
        if (t == 0.0) return make_box(n, w);
        return make_rounded_box(n, w, t);
    };
    b.inball = w;
    b.circum = w * std::sqrt(static_cast<double>(n));
    std::ostringstream os;
    os << "box:" << n << ":w=" << fmt17(w);
    b.spec = os.str();
    return b;
}

}  // namespace lpsteiner
