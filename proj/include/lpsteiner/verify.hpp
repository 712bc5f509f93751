#pragma once

// Verification suites.  Every check recomputes a quantity along two
// independent routes (closed form vs quadrature, exact rational vs rational,
// series vs direct evaluation, contour coefficients vs analytic candidates)
// and reports the outcome with the tolerance it was judged against.
//
// Status semantics:
//   pass / fail : |computed - expected| <= tolerance (absolute, or relative
//                 to |expected| when the report says so)
//   recorded    : emitted for open questions and divergence sweeps; carries
//                 data and a verdict in the note but never fails a build.

#include "lpsteiner/catalog.hpp"
#include "lpsteiner/steiner.hpp"

#include <complex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lpsteiner {

enum class CheckStatus { pass, fail, recorded };

inline const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "recorded";
    }
}

struct CheckReport {
    std::string id;
    std::string inputs;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool relative = false;       // tolerance scales with |expected| when true
    std::string provenance;      // where the expected value comes from
    CheckStatus status = CheckStatus::fail;
    std::string note;
};

// One table of per-check tolerances.  Each constant is pinned at roughly ten
// times the worst quadrature error estimate observed at the reference
// resolution when the check was first brought up, so a failure indicates a
// logic error rather than numerical noise.
namespace check_tol {
constexpr double series_vs_direct_2d = 1e-6;   // relative
constexpr double series_vs_direct_3d = 1e-4;   // relative
constexpr double series_ball = 1e-8;           // relative
constexpr double classical_reduction = 1e-8;   // relative
constexpr double classical_ball = 1e-10;       // relative
constexpr double classical_vanishing = 1e-8;   // absolute
constexpr double dual_expansion = 1e-6;        // relative
constexpr double dual_k0 = 1e-8;               // relative
constexpr double homogeneity = 1e-6;           // relative
constexpr double valuation = 1e-5;             // relative
constexpr double valuation_support = 1e-13;    // absolute
constexpr double corner_sphere_2d = 1e-8;      // relative
constexpr double corner_sphere_3d = 1e-5;      // relative
constexpr double cube_distance = 1e-6;         // relative
constexpr double bridge_2d = 1e-8;             // relative
}  // namespace check_tol

// Fixed seeds so the randomized checks reproduce bit-for-bit.
constexpr unsigned kInvarianceSeed = 424243u;
constexpr unsigned kValuationSeed = 90901u;

namespace detail {

inline CheckReport judged_check(std::string id, std::string inputs, double expected,
                                double computed, double tol, bool relative,
                                std::string provenance, std::string note = "") {
    CheckReport r;
    r.id = std::move(id);
    r.inputs = std::move(inputs);
    r.expected = expected;
    r.computed = computed;
    r.tolerance = tol;
    r.relative = relative;
    r.provenance = std::move(provenance);
    r.note = std::move(note);
    double bound = relative ? tol * std::fabs(expected) : tol;
    r.status = std::fabs(computed - expected) <= bound ? CheckStatus::pass
                                                       : CheckStatus::fail;
    return r;
}

inline CheckReport recorded_check(std::string id, std::string inputs, double expected,
                                  double computed, double tol, bool relative,
                                  std::string provenance, std::string note) {
    CheckReport r = judged_check(std::move(id), std::move(inputs), expected, computed,
                                 tol, relative, std::move(provenance), std::move(note));
    r.status = CheckStatus::recorded;
    return r;
}

inline double unit_sphere_measure_of(int n) {
    return n == 2 ? 6.2831853071795865 : 12.566370614359173;
}

// Taylor coefficients of t -> integral over the sphere of (h(u)+t)^{-n},
// recovered from the directly evaluated integral at complex shifts
// z = radius * e^{i theta} (trapezoidal contour average; the aliasing error
// is of order (radius / min h)^{q} and the noise amplification is only
// radius^{-k}).  This route shares nothing with the coefficient tables
// beyond the support function itself.
inline std::vector<double> parallel_dual_coefficients(const Body& body, int k_max,
                                                      double radius) {
    const int n = body.n;
    const int q = 64;
    std::vector<double> fre(q), fim(q);
    for (int j = 0; j < q; ++j) {
        double th = 2.0 * M_PI * j / q;
        const double zr = radius * std::cos(th), zi = radius * std::sin(th);
        MultiEstimate est = integrate_sphere(
            n, 2,
            [&, zr, zi, n](const Vec3& u, double* out) {
                std::complex<double> v =
                    std::pow(std::complex<double>(body.support(u) + zr, zi), -n);
                out[0] = v.real();
                out[1] = v.imag();
            },
            1e-12);
        fre[j] = est.values[0];
        fim[j] = est.values[1];
    }
    std::vector<double> c(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        double acc = 0.0;
        for (int j = 0; j < q; ++j) {
            double th = 2.0 * M_PI * j * k / q;
            acc += fre[j] * std::cos(th) + fim[j] * std::sin(th);
        }
        c[static_cast<std::size_t>(k)] = acc / (q * std::pow(radius, k));
    }
    return c;
}

inline std::string fmt_inputs(const Body& body) { return "body=" + body.spec; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact combinatorial identity between the assembled composition sum and the
// closed binomial form, plus the two structural degree patterns.

inline std::vector<CheckReport> check_combinatorial_identity(
    int n_min, int n_max, const std::vector<Rational>& p_set, int k_max) {
    std::vector<CheckReport> out;
    for (int n = n_min; n <= n_max; ++n) {
        for (const Rational& p : p_set) {
            if (p == Rational(-n)) continue;
            int mismatches = 0;
            for (int k = 0; k <= k_max; ++k)
                if (C_npk(n, p, k) != C_npk_closed(n, p, k)) ++mismatches;
            out.push_back(detail::judged_check(
                "comb-identity",
                "n=" + std::to_string(n) + " p=" + p.str() + " k<=" + std::to_string(k_max),
                0.0, mismatches, 0.0, false, "exact-rational",
                "composition sum vs closed binomial, exact rational comparison"));
        }
        {
            // p = n: leading coefficient 1, everything after vanishes.
            int mismatches = C_npk_closed(n, Rational(n), 0) == Rational(1) ? 0 : 1;
            for (int k = 1; k <= k_max; ++k)
                if (C_npk(n, Rational(n), k) != Rational(0)) ++mismatches;
            out.push_back(detail::judged_check(
                "comb-top-degree", "n=" + std::to_string(n) + " p=" + Rational(n).str(),
                0.0, mismatches, 0.0, false, "exact-rational",
                "coefficient 1 at k = 0 and zero for k >= 1"));
        }
        {
            // p = n(n-l)/(n+l) with l = 3: integer homogeneity degree, so the
            // coefficients vanish exactly beyond k = 3.
            Rational p = Rational(n) * Rational(n - 3) / Rational(n + 3);
            int mismatches = 0;
            for (int k = 4; k <= k_max; ++k)
                if (C_npk(n, p, k) != Rational(0)) ++mismatches;
            for (int k = 0; k <= 3; ++k)
                if (C_npk(n, p, k).sign() <= 0) ++mismatches;
            out.push_back(detail::judged_check(
                "comb-integer-degree", "n=" + std::to_string(n) + " p=" + p.str(),
                0.0, mismatches, 0.0, false, "exact-rational",
                "positive through k = 3, zero afterwards"));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Truncated expansion vs direct evaluation of the parallel body.

inline std::vector<CheckReport> check_series_vs_direct(const Body& body,
                                                       const std::vector<PParam>& p_grid,
                                                       const std::vector<double>& t_grid) {
    std::vector<CheckReport> out;
    const double tol = body.n == 2 ? check_tol::series_vs_direct_2d
                                   : check_tol::series_vs_direct_3d;
    const int k_series = body.n == 2 ? 60 : 40;
    for (const PParam& p : p_grid) {
        SeriesResult s = series_asp(body, p, k_series, 1e-9);
        std::string snote = std::string("truncation=") + truncation_name(s.truncation) +
                            ", coefficients through k=" + std::to_string(s.k_max);
        for (const std::string& f : s.flags) snote += ", flag:" + f;
        for (double t : t_grid) {
            double direct = direct_asp_parallel(body, p, t).value;
            double eval = series_eval(s, t);
            out.push_back(detail::judged_check(
                "series-vs-direct",
                detail::fmt_inputs(body) + " p=" + p.str() + " t=" + fmt17(t), direct,
                eval, tol, true, "direct parallel-body integral", snote));
        }
    }
    return out;
}

// Balls admit a closed form for the whole expansion.
inline std::vector<CheckReport> check_series_ball(int n, const std::vector<PParam>& p_grid,
                                                  const std::vector<double>& t_grid) {
    std::vector<CheckReport> out;
    Body b = make_ball(n, 1.0);
    for (const PParam& p : p_grid) {
        double alpha = exponents_for(n, p).alpha_rat.to_double();
        SeriesResult s = series_asp(b, p, 60, 1e-9);
        for (double t : t_grid) {
            double expect = std::pow(1.0 + t, alpha) * detail::unit_sphere_measure_of(n);
            out.push_back(detail::judged_check(
                "series-ball", "body=" + b.spec + " p=" + p.str() + " t=" + fmt17(t),
                expect, series_eval(s, t), check_tol::series_ball, true, "closed form",
                std::string("truncation=") + truncation_name(s.truncation)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// p = 0 reduction to the classical quermassintegrals.

inline std::vector<CheckReport> check_classical_reduction(const Body& body) {
    std::vector<CheckReport> out;
    const int n = body.n;
    std::vector<CoeffResult> v0 = V_pk_table(body, PParam::finite(0), n + 2);
    for (int k = 0; k <= n; ++k) {
        double querm = classical_querm(body, k).value;
        double expect = n * gen_binom(Rational(n), k).to_double() * querm;
        out.push_back(detail::judged_check(
            "classical-reduction", detail::fmt_inputs(body) + " k=" + std::to_string(k),
            expect, v0[static_cast<std::size_t>(k)].value, check_tol::classical_reduction,
            true, "independent curvature-moment integral"));
    }
    for (int k = n + 1; k <= n + 2; ++k)
        out.push_back(detail::judged_check(
            "classical-vanishing", detail::fmt_inputs(body) + " k=" + std::to_string(k),
            0.0, v0[static_cast<std::size_t>(k)].value, check_tol::classical_vanishing,
            false, "closed form", "coefficients beyond k = n vanish"));
    if (body.spec.rfind("ball:", 0) == 0) {
        double r = support_min(body);
        for (int k = 0; k <= n; ++k) {
            double expect = std::pow(r, n - k) * detail::unit_sphere_measure_of(n) *
                            gen_binom(Rational(n), k).to_double();
            out.push_back(detail::judged_check(
                "classical-ball", detail::fmt_inputs(body) + " k=" + std::to_string(k),
                expect, v0[static_cast<std::size_t>(k)].value, check_tol::classical_ball,
                true, "closed form", "binomial pattern of the unit-ball expansion"));
        }
    }
    return out;
}

// Rounded cube in the plane: every quermassintegral has a closed form from
// the square + disk decomposition, giving a fully analytic cross-check.
inline std::vector<CheckReport> check_classical_rounded_cube(double l) {
    std::vector<CheckReport> out;
    Body b = make_rounded_cube(2, l);
    const double pi = 3.14159265358979324;
    double w = 1.0 - 1.0 / l, rho = 1.0 / l;
    double closed[3] = {4.0 * w * w + 8.0 * w * rho + pi * rho * rho,  // area
                        4.0 * w + pi * rho,                            // perimeter/2
                        pi};
    for (int k = 0; k <= 2; ++k) {
        out.push_back(detail::judged_check(
            "rounded-cube-querm", detail::fmt_inputs(b) + " k=" + std::to_string(k),
            closed[k], classical_querm(b, k).value, check_tol::classical_ball, true,
            "closed-form square+disk sums"));
    }
    std::vector<CoeffResult> v0 = V_pk_table(b, PParam::finite(0), 4);
    for (int k = 0; k <= 2; ++k) {
        double expect = 2.0 * gen_binom(Rational(2), k).to_double() * closed[k];
        out.push_back(detail::judged_check(
            "rounded-cube-reduction", detail::fmt_inputs(b) + " k=" + std::to_string(k),
            expect, v0[static_cast<std::size_t>(k)].value, check_tol::classical_reduction,
            true, "closed-form square+disk sums"));
    }
    for (int k = 3; k <= 4; ++k)
        out.push_back(detail::judged_check(
            "rounded-cube-vanishing", detail::fmt_inputs(b) + " k=" + std::to_string(k),
            0.0, v0[static_cast<std::size_t>(k)].value, check_tol::classical_vanishing,
            false, "closed form"));
    return out;
}

// ---------------------------------------------------------------------------
// Dual reduction at the infinite parameter: the t-expansion coefficients of
// the parallel-body integral against both normalization candidates for the
// dual quermassintegrals of the polar body.  The normalization is an open
// question in the source material, so every comparison is emitted with
// status=recorded; the note names the matching candidate.

inline std::vector<CheckReport> check_dual_reduction(const Body& body, int k_max) {
    std::vector<CheckReport> out;
    const int n = body.n;
    Body polar = polar_of(body);
    double radius = 0.45 * support_min(body);
    std::vector<double> c = detail::parallel_dual_coefficients(body, k_max, radius);

    // k = 0 is undisputed: the value is the infinite-parameter surface area,
    // i.e. n times the polar volume.
    double asinf = asp_sphere(body, PParam::plus_inf()).value;
    out.push_back(detail::judged_check(
        "dual-reduction-k0", detail::fmt_inputs(body), asinf, c[0], check_tol::dual_k0,
        true, "infinite-parameter surface area",
        "contour coefficient at k = 0 equals n times the polar volume"));

    for (int k = 0; k <= k_max; ++k) {
        double wpolar = dual_querm(polar, -static_cast<double>(k)).value;
        double bare = gen_binom(Rational(-n), k).to_double() * wpolar;
        double timesn = n * bare;
        double ref = std::max(std::fabs(c[static_cast<std::size_t>(k)]), 1e-300);
        double res_with = std::fabs(c[static_cast<std::size_t>(k)] - timesn) / ref;
        double res_without = std::fabs(c[static_cast<std::size_t>(k)] - bare) / ref;
        std::ostringstream note;
        note << "normalization probe: candidate-with-factor-n residual=" << fmt17(res_with)
             << ", candidate-without residual=" << fmt17(res_without) << "; matched="
             << (res_with <= res_without ? "with-factor-n" : "without-factor-n");
        out.push_back(detail::recorded_check(
            "dual-normalization", detail::fmt_inputs(body) + " k=" + std::to_string(k),
            timesn, c[static_cast<std::size_t>(k)], check_tol::dual_expansion, true,
            "contour coefficients of the direct integral", note.str()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homogeneity degree and isometry invariance under seeded random transforms.

inline std::vector<CheckReport> check_homogeneity_invariance(
    const Body& body, const std::vector<PParam>& p_grid, int k_max, int trials) {
    std::vector<CheckReport> out;
    const int n = body.n;
    std::mt19937 rng(kInvarianceSeed + static_cast<unsigned>(n));
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);

    std::vector<std::vector<double>> base;
    std::vector<double> row_scale;
    for (const PParam& p : p_grid) {
        std::vector<double> row;
        for (const CoeffResult& cr : V_pk_table(body, p, k_max)) row.push_back(cr.value);
        double scale = 0.0;
        for (double v : row) scale = std::max(scale, std::fabs(v));
        base.push_back(std::move(row));
        row_scale.push_back(scale);
    }

    for (int trial = 0; trial < trials; ++trial) {
        // Trial 0 uses the documented fixed instances (scale exactly 2 and a
        // plane rotation by pi/7); later trials draw from the seeded stream.
        double a = trial == 0 ? 2.0 : scale_dist(rng);
        Mat3 q = (trial == 0 && n == 2)
                     ? rotation2d(M_PI / 7.0)
                     : random_orthogonal(n, kInvarianceSeed + 100u * (trial + 1));
        Mat3 qr = random_orthogonal(n, kInvarianceSeed + 100u * (trial + 1) + 7u, true);
        Body moved = scale_body(rotate_body(body, q), a);
        Body reflected = rotate_body(body, qr);
        for (std::size_t pi_ = 0; pi_ < p_grid.size(); ++pi_) {
            const PParam& p = p_grid[pi_];
            double alpha = exponents_for(n, p).alpha_rat.to_double();
            std::vector<CoeffResult> vm = V_pk_table(moved, p, k_max);
            std::vector<CoeffResult> vr = V_pk_table(reflected, p, k_max);
            for (int k = 0; k <= k_max; ++k) {
                double b0 = base[pi_][static_cast<std::size_t>(k)];
                std::string in = detail::fmt_inputs(body) + " p=" + p.str() +
                                 " k=" + std::to_string(k) +
                                 " trial=" + std::to_string(trial);
                // Entries that vanish analytically cannot carry a relative
                // tolerance; judge them absolutely against the table scale.
                bool tiny = std::fabs(b0) <= 1e-8 * row_scale[pi_];
                double tol = tiny ? check_tol::homogeneity * row_scale[pi_]
                                  : check_tol::homogeneity;
                out.push_back(detail::judged_check(
                    "homogeneity", in + " scale=" + fmt17(a),
                    std::pow(a, alpha - k) * b0, vm[static_cast<std::size_t>(k)].value,
                    tol, !tiny, "degree rule", "rotate + scale; degree alpha - k"));
                out.push_back(detail::judged_check(
                    "reflection-invariance", in, b0,
                    vr[static_cast<std::size_t>(k)].value, tol, !tiny,
                    "isometry invariance", "orthogonal map with determinant -1"));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Valuation property on a capped-ellipsoid decomposition: the two caps K, C
// overlap in a slab I and union to the full ellipsoid E, so any valuation
// satisfies phi(K) + phi(C) = phi(E) + phi(I).

inline std::vector<CheckReport> check_valuation(const std::vector<double>& axes,
                                                double eps,
                                                const std::vector<Rational>& p_grid,
                                                int mk_max) {
    std::vector<CheckReport> out;
    const int n = static_cast<int>(axes.size());
    Body E = make_ellipsoid(axes);
    Body K = make_capped_ellipsoid(axes, 0, +eps, "below");
    Body C = make_capped_ellipsoid(axes, 0, -eps, "above");
    Body I = make_ellipsoid_slab(axes, 0, -eps, +eps);

    for (const Rational& pr : p_grid) {
        if (pr.sign() <= 0)
            throw std::invalid_argument(
                "check_valuation: needs p > 0 so flat pieces carry no mass");
        PParam p = PParam::finite(pr);
        SteinerTable tK = boundary_table(K, p, mk_max);
        SteinerTable tC = boundary_table(C, p, mk_max);
        SteinerTable tE = boundary_table(E, p, mk_max);
        SteinerTable tI = boundary_table(I, p, mk_max);
        for (int k = 0; k <= mk_max; ++k)
            for (int m = 0; m <= k; ++m) {
                double lhs = tK.w(m, k) + tC.w(m, k);
                double rhs = tE.w(m, k) + tI.w(m, k);
                out.push_back(detail::judged_check(
                    "valuation-additivity",
                    "axes-body split at |x0|<=" + fmt17(eps) + " p=" + pr.str() +
                        " m=" + std::to_string(m) + " k=" + std::to_string(k),
                    rhs, lhs, check_tol::valuation, true,
                    "independent region decompositions",
                    "piece integrals of the caps vs whole + slab"));
            }
    }

    // Pointwise support identity behind the valuation property: the union
    // takes the max and the intersection the min, direction by direction.
    std::mt19937 rng(kValuationSeed);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        Vec3 u{};
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            u[i] = nd(rng);
            norm += u[i] * u[i];
        }
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) u[i] /= norm;
        double a = K.support(u), b = C.support(u);
        worst = std::max(worst, std::fabs(E.support(u) - std::max(a, b)));
        worst = std::max(worst, std::fabs(I.support(u) - std::min(a, b)));
        worst = std::max(worst, std::fabs((a + b) - (E.support(u) + I.support(u))));
    }
    out.push_back(detail::judged_check(
        "valuation-support-identity", "100 seeded directions, split at " + fmt17(eps),
        0.0, worst, check_tol::valuation_support, false, "max/min support composition",
        "h_union = max(h_K, h_C) and h_intersection = min(h_K, h_C) pointwise"));

    // Degenerate split: a cut beyond the axis leaves the body untouched, so
    // the union is the larger body and the identity collapses to itself.
    {
        double beyond = 2.0 * axes[0];
        Body K2 = make_capped_ellipsoid(axes, 0, beyond, "below");
        PParam p = PParam::finite(p_grid.front());
        double whole = W_pmk(E, p, 1, 1).value;
        double capped = W_pmk(K2, p, 1, 1).value;
        out.push_back(detail::judged_check(
            "valuation-degenerate", "cut=" + fmt17(beyond) + " p=" + p_grid.front().str(),
            whole, capped, check_tol::valuation, true, "identical bodies",
            "cut beyond the axis: the cap equals the whole body"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The diagonal bridge between coefficients and two-index surface areas: an
// identity in the plane, and a recorded mismatch in dimension 3 (the chained
// formula drops cross-composition terms that vanish only for n = 2).

inline std::vector<CheckReport> check_diagonal_bridge() {
    std::vector<CheckReport> out;
    Body e = make_ellipsoid({1.0, 2.0});
    PParam p1 = PParam::finite(1);
    for (int l : {1, 2, 3}) {
        double lhs = W_pmk(e, p1, l, l).value;
        double rhs = gen_binom(Rational(2, 3), l).to_double() *
                     mixed_asa(e, p1, Rational(3 * l)).value;
        out.push_back(detail::judged_check(
            "diagonal-bridge-2d", detail::fmt_inputs(e) + " l=" + std::to_string(l), rhs,
            lhs, check_tol::bridge_2d, true, "two-index surface area",
            "diagonal coefficient equals binom(2/3, l) times the two-index value"));
    }
    {
        Body b = make_ball(3, 1.0);
        double lhs = W_pmk(b, p1, 2, 2).value;  // equals the assembled total at k = 2
        double rhs = gen_binom(Rational(3, 4), 1).to_double() *
                     mixed_asa(b, p1, Rational(4)).value;
        out.push_back(detail::recorded_check(
            "diagonal-bridge-3d", detail::fmt_inputs(b) + " l=1", rhs, lhs,
            check_tol::dual_expansion, true, "chained two-index formula",
            "for n >= 3 the chained formula keeps only one composition and "
            "overshoots: unit-ball values are 3/8 vs 3/4 of the sphere measure; "
            "ratio computed/expected = " + fmt17(lhs / rhs)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Semicontinuity counterexample sweep on the rounded-cube family.

inline std::vector<CheckReport> sweep_semicontinuity(int n,
                                                     const std::vector<double>& l_list,
                                                     const std::vector<Rational>& p_grid,
                                                     int k_max) {
    std::vector<CheckReport> out;
    PParam p1 = PParam::finite(1);
    const double tol_corner =
        n == 2 ? check_tol::corner_sphere_2d : check_tol::corner_sphere_3d;
    double degree_shift = static_cast<double>(n) * (n - 1) / (n + 1);

    Body cube = make_box(n, 1.0);
    for (double l : l_list) {
        Body kl = make_rounded_cube(n, l);
        SteinerTable t = boundary_table(kl, p1, k_max);
        for (int k = 0; k <= k_max; ++k) {
            double expect = std::pow(l, k - degree_shift) *
                            detail::unit_sphere_measure_of(n) *
                            C_npk_closed(n, Rational(1), k).to_double();
            out.push_back(detail::judged_check(
                "corner-sphere-closed-form",
                "n=" + std::to_string(n) + " l=" + fmt17(l) + " k=" + std::to_string(k),
                expect, t.w(k, k), tol_corner, true, "closed form",
                "only the corner spheres carry curvature mass at p = 1"));
        }
        double dist = hausdorff_distance(kl, cube);
        out.push_back(detail::judged_check(
            "cube-distance", "n=" + std::to_string(n) + " l=" + fmt17(l),
            (std::sqrt(static_cast<double>(n)) - 1.0) / l, dist,
            check_tol::cube_distance, true, "closed form",
            "support distance to the limiting cube"));
    }

    // The limiting cube itself carries no diagonal mass at p = 1.
    {
        int mismatches = 0;
        for (int k = 0; k <= k_max; ++k)
            if (W_pmk(cube, p1, k, k).value != 0.0) ++mismatches;
        out.push_back(detail::judged_check(
            "flat-cube-vanishing", "n=" + std::to_string(n) + " k<=" + std::to_string(k_max),
            0.0, mismatches, 0.0, false, "flat-face convention",
            "every diagonal coefficient of the cube vanishes exactly"));
    }

    // Signed divergence below the pole: every composition term carries the
    // sign (-1)^k, and the corner contribution grows with l.
    for (const Rational& pr : p_grid) {
        if (pr > Rational(-n)) continue;
        PParam p = PParam::finite(pr);
        for (int k = 1; k <= std::min(3, k_max); ++k) {
            int violations = 0;
            double prev_mag = 0.0;
            std::ostringstream vals;
            for (double l : l_list) {
                double v = V_pk(make_rounded_cube(n, l), p, k).value;
                if ((k % 2 == 1 && v >= 0.0) || (k % 2 == 0 && v <= 0.0)) ++violations;
                if (std::fabs(v) <= prev_mag) ++violations;
                prev_mag = std::fabs(v);
                vals << " l=" << fmt17(l) << ":" << fmt17(v);
            }
            out.push_back(detail::judged_check(
                "signed-divergence",
                "n=" + std::to_string(n) + " p=" + pr.str() + " k=" + std::to_string(k),
                0.0, violations, 0.0, false, "sign analysis of the composition sums",
                "sign (-1)^k with growing magnitude;" + vals.str()));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Divergence sweep on the smooth l_r balls: fixed quadrature levels, value
// reported per level, no convergence claimed either way (status=recorded).

inline CheckReport sweep_lr_divergence(int n, double r, const PParam& p, int levels) {
    Body body = make_lr_ball(n, r);
    Exponents e = exponents_for(n, p);
    std::vector<double> vals;
    for (int L = 0; L < levels; ++L) {
        int level = 6 + L;
        std::vector<double> v = integrate_boundary_fixed(
            body, 1,
            [&, e, n](const BoundaryJet& jet, double* out) {
                out[0] = powz(jet.H[n - 1], e.curv_pow) *
                         std::pow(jet.support_dot, e.beta);
            },
            level);
        vals.push_back(v[0]);
    }
    bool growing = true, stable = vals.size() >= 2;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] <= vals[i - 1]) growing = false;
    if (vals.size() >= 2) {
        double last = vals.back(), prev = vals[vals.size() - 2];
        stable = std::fabs(last - prev) <= 1e-6 * std::max(1.0, std::fabs(last));
    }
    std::ostringstream note;
    note << "fixed-level values:";
    for (std::size_t i = 0; i < vals.size(); ++i)
        note << " L" << (6 + i) << "=" << fmt17(vals[i]);
    note << (growing && !stable
                 ? "; monotone-growth: values increase at every level"
                 : (stable ? "; stable across the last levels" : "; mixed behavior"));
    if (!p.is_inf() && p.value() == Rational(0))
        note << "; control value n*vol=" << fmt17(n * classical_querm(body, 0).value);
    double expected = vals.size() >= 2 ? vals[vals.size() - 2] : vals.back();
    return detail::recorded_check(
        "lr-divergence-sweep",
        "n=" + std::to_string(n) + " r=" + fmt17(r) + " p=" + p.str(), expected,
        vals.back(), 1e-6, true, "fixed-level quadrature sweep", note.str());
}

// ---------------------------------------------------------------------------
// Orchestration

inline bool any_failed(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (r.status == CheckStatus::fail) return true;
    return false;
}

inline std::string summarize_checks(const std::vector<CheckReport>& reports) {
    int pass = 0, fail = 0, recorded = 0;
    for (const CheckReport& r : reports) {
        if (r.status == CheckStatus::pass) ++pass;
        if (r.status == CheckStatus::fail) ++fail;
        if (r.status == CheckStatus::recorded) ++recorded;
    }
    std::ostringstream os;
    os << pass << " passed, " << fail << " failed, " << recorded << " recorded";
    if (fail > 0) {
        os << "; failing:";
        for (const CheckReport& r : reports)
            if (r.status == CheckStatus::fail) os << " " << r.id << "[" << r.inputs << "]";
    }
    return os.str();
}

inline std::vector<std::string> verify_suite_names() {
    return {"combinatorial", "series",    "classical",      "dual",         "homogeneity",
            "valuation",     "bridges",   "semicontinuity", "lr-divergence"};
}

// Named suites with their reference inputs.  "all" concatenates everything.
inline std::vector<CheckReport> run_verify_suite(const std::string& suite) {
    std::vector<CheckReport> out;
    auto append = [&out](std::vector<CheckReport> v) {
        for (CheckReport& r : v) out.push_back(std::move(r));
    };
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "combinatorial") {
        known = true;
        append(check_combinatorial_identity(
            2, 6,
            {Rational(0), Rational(1), Rational(2), Rational(1, 2), Rational(-3),
             Rational(-5), Rational(7, 2)},
            12));
    }
    if (all || suite == "series") {
        known = true;
        std::vector<PParam> ps = {PParam::finite(1, 2), PParam::finite(1),
                                  PParam::finite(2), PParam::finite(5)};
        append(check_series_vs_direct(make_ellipsoid({1.0, 1.2}), ps,
                                      {0.05, 0.1, 0.2, 0.4}));
        append(check_series_vs_direct(make_ellipsoid({1.0, 1.2, 0.8}), ps,
                                      {0.04, 0.08, 0.16, 0.32}));
        append(check_series_ball(2, ps, {0.05, 0.2, 0.4}));
    }
    if (all || suite == "classical") {
        known = true;
        append(check_classical_reduction(make_ball(2, 1.0)));
        append(check_classical_reduction(make_ball(3, 1.0)));
        append(check_classical_reduction(make_ellipsoid({1.0, 2.0})));
        append(check_classical_reduction(make_ellipsoid({1.0, 1.2, 0.8})));
        append(check_classical_rounded_cube(2.0));
    }
    if (all || suite == "dual") {
        known = true;
        append(check_dual_reduction(make_ball(2, 1.0), 4));
        append(check_dual_reduction(make_ellipsoid({1.0, 2.0}), 4));
    }
    if (all || suite == "homogeneity") {
        known = true;
        std::vector<PParam> ps = {PParam::finite(1, 2), PParam::finite(2)};
        append(check_homogeneity_invariance(make_ellipsoid({1.0, 2.0}), ps, 2, 5));
        append(check_homogeneity_invariance(make_ellipsoid({1.0, 1.2, 0.8}), ps, 2, 3));
    }
    if (all || suite == "valuation") {
        known = true;
        append(check_valuation({1.0, 1.2, 0.8}, 0.2, {Rational(1), Rational(2)}, 2));
    }
    if (all || suite == "bridges") {
        known = true;
        append(check_diagonal_bridge());
    }
    if (all || suite == "semicontinuity") {
        known = true;
        append(sweep_semicontinuity(2, {2.0, 4.0, 8.0, 16.0}, {Rational(1), Rational(-3)},
                                    5));
        append(sweep_semicontinuity(3, {2.0, 4.0}, {Rational(1)}, 3));
    }
    if (all || suite == "lr-divergence") {
        known = true;
        out.push_back(sweep_lr_divergence(2, 4.0, PParam::finite(-1), 5));
        out.push_back(sweep_lr_divergence(2, 4.0, PParam::finite(1), 5));
        out.push_back(sweep_lr_divergence(2, 4.0, PParam::finite(0), 5));
    }
    if (!known) throw std::invalid_argument("unknown verify suite: " + suite);
    return out;
}

}  // namespace lpsteiner
