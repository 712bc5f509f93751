// Tests for the curvature-power functionals (coefficients, surface-area
// family, classical/dual quermassintegrals, expansions).
//
// Frozen reference values were computed independently with mpmath (dps=40)
// from support-function parametrizations of the bodies, before this header
// was written; closed forms on balls come from the homogeneity of the family
// together with the combinatorics layer, which is tested separately against
// exact rational identities.

#include <catch2/catch_amalgamated.hpp>

#include "lpsteiner/catalog.hpp"
#include "lpsteiner/steiner.hpp"

#include <algorithm>
#include <cmath>

using namespace lpsteiner;
using Catch::Approx;

namespace {

constexpr double kTwoPi = 6.2831853071795865;
constexpr double kFourPi = 12.566370614359173;

// mpmath (dps=40) values for the ellipse with semi-axes (1, 2).
constexpr double kEllipsePerimeter = 9.6884482205476762;
constexpr double kEllipseArea = 6.2831853071795865;  // pi * 1 * 2
constexpr double kAsHalfEllipse = 9.5235280605468237;
constexpr double kAsOneEllipse = 7.9163174289057457;  // = 2 pi 2^(1/3)
constexpr double kAsFiveEllipse = 4.6683887420290243;
constexpr double kAsOneEllipsoid = 12.312478369553895;  // axes (1, 1.2, 0.8)
constexpr double kDualHalfEllipse = 5.1674763426237648;
// Coefficients of the p = 2 expansion for the ellipse, k = 0..3.
constexpr double kV2Ellipse[4] = {6.2831853071795865, 0.0, -0.036815538909255390,
                                  0.12083728100960075};
// Coefficients of the p = -1 expansion for the ellipse, k = 0..6 (terminating).
constexpr double kVm1Ellipse[7] = {50.265482457436692, 232.52275729314423,
                                   435.89598068558381, 419.37845422791139,
                                   217.94799034279191, 58.130689323286057,
                                   6.2831853071795865};

Body ellipse() { return make_ellipsoid({1.0, 2.0}); }
Body ellipsoid3() { return make_ellipsoid({1.0, 1.2, 0.8}); }

double unit_sphere_measure(int n) { return n == 2 ? kTwoPi : kFourPi; }

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

}  // namespace

TEST_CASE("p parameter parses, prints, and classifies") {
    CHECK(parse_p("7/2").str() == "7/2");
    CHECK(parse_p("-1.25").str() == "-5/4");
    CHECK(parse_p("3").str() == "3/1");
    CHECK(parse_p("inf").kind() == PParam::Kind::plus_inf);
    CHECK(parse_p("+inf").kind() == PParam::Kind::plus_inf);
    CHECK(parse_p("-inf").kind() == PParam::Kind::minus_inf);
    CHECK(parse_p("inf").str() == "inf");
    CHECK(parse_p("-inf").str() == "-inf");
    CHECK(parse_p("inf").is_inf());
    CHECK_FALSE(parse_p("0").is_inf());
    CHECK(parse_p("7/2").to_double() == 3.5);
    CHECK(std::isinf(parse_p("-inf").to_double()));
    CHECK_THROWS_AS(parse_p("inf").value(), std::domain_error);
    CHECK(PParam::finite(1, 2).value() == Rational(1, 2));
}

TEST_CASE("exponent bundle matches the defining fractions") {
    Exponents e = exponents_for(2, PParam::finite(2));
    CHECK(e.curv_pow == Approx(0.5));
    CHECK(e.beta == Approx(-0.5));
    CHECK(e.sphere_pow == Approx(0.5));
    CHECK(e.alpha_rat == Rational(0));
    CHECK(e.beta_rat == Rational(-1, 2));
    CHECK_FALSE(e.is_inf);

    e = exponents_for(3, PParam::finite(1));
    CHECK(e.curv_pow == Approx(0.25));
    CHECK(e.beta == Approx(0.0));
    CHECK(e.sphere_pow == Approx(0.75));
    CHECK(e.alpha_rat == Rational(3, 2));

    e = exponents_for(3, PParam::plus_inf());
    CHECK(e.curv_pow == 1.0);
    CHECK(e.beta == -3.0);
    CHECK(e.sphere_pow == 0.0);
    CHECK(e.beta_rat == Rational(-3));
    CHECK(e.alpha_rat == Rational(-3));
    CHECK(e.is_inf);

    CHECK_THROWS_AS(exponents_for(2, PParam::finite(-2)), std::domain_error);
    CHECK_THROWS_AS(exponents_for(3, PParam::finite(-3)), std::domain_error);
    CHECK_THROWS_AS(exponents_for(1, PParam::finite(1)), std::domain_error);
}

TEST_CASE("power convention: zero exponent wins, flat pieces vanish or diverge") {
    CHECK(powz(0.0, 0.0) == 1.0);
    CHECK(powz(-1.0, 0.0) == 1.0);
    CHECK(powz(0.0, 2.0) == 0.0);
    CHECK(powz(0.0, -1.0) == std::numeric_limits<double>::infinity());
    CHECK(powz(2.0, 3.0) == Approx(8.0));
    CHECK(powz(4.0, 0.5) == Approx(2.0));
}

TEST_CASE("surface-area family on balls is a pure power of the radius") {
    struct Case {
        int n;
        Rational p;
    };
    const Case cases[] = {{2, Rational(1, 2)}, {2, Rational(2)},  {2, Rational(7, 2)},
                          {2, Rational(-3)},   {2, Rational(-5)}, {3, Rational(1, 2)},
                          {3, Rational(2)},    {3, Rational(-5)}};
    for (const Case& c : cases) {
        PParam p = PParam::finite(c.p);
        double alpha = exponents_for(c.n, p).alpha_rat.to_double();
        for (double r : {0.5, 1.0, 2.0}) {
            Body b = make_ball(c.n, r);
            double expect = std::pow(r, alpha) * unit_sphere_measure(c.n);
            CAPTURE(c.n, c.p.str(), r);
            CHECK(asp_boundary(b, p).value == Approx(expect).epsilon(1e-10));
            CHECK(asp_sphere(b, p).value == Approx(expect).epsilon(1e-10));
        }
    }
    // Infinite parameter: degree is exactly -n.
    for (int n : {2, 3})
        for (double r : {0.5, 2.0}) {
            Body b = make_ball(n, r);
            double expect = std::pow(r, -n) * unit_sphere_measure(n);
            CHECK(asp_boundary(b, PParam::plus_inf()).value ==
                  Approx(expect).epsilon(1e-10));
            CHECK(asp_sphere(b, PParam::minus_inf()).value ==
                  Approx(expect).epsilon(1e-10));
        }
}

TEST_CASE("surface-area family on the ellipse matches independent values") {
    Body e = ellipse();
    CHECK(asp_boundary(e, PParam::finite(1, 2)).value ==
          Approx(kAsHalfEllipse).epsilon(1e-9));
    CHECK(asp_boundary(e, PParam::finite(1)).value ==
          Approx(kAsOneEllipse).epsilon(1e-9));
    // p = 1 value is affine-invariant: equals 2 pi (area/pi)^(1/3) here.
    CHECK(asp_boundary(e, PParam::finite(1)).value ==
          Approx(kTwoPi * std::cbrt(2.0)).epsilon(1e-9));
    // p = n is invariant under volume-preserving linear maps: ellipse -> disk.
    CHECK(asp_boundary(e, PParam::finite(2)).value == Approx(kTwoPi).epsilon(1e-10));
    CHECK(asp_boundary(e, PParam::finite(5)).value ==
          Approx(kAsFiveEllipse).epsilon(1e-9));
    // p = 0 reduces to n times the volume.
    CHECK(asp_boundary(e, PParam::finite(0)).value ==
          Approx(2.0 * kEllipseArea).epsilon(1e-10));

    CHECK(asp_boundary(ellipsoid3(), PParam::finite(1)).value ==
          Approx(kAsOneEllipsoid).epsilon(1e-8));
}

TEST_CASE("sphere route agrees with the boundary route") {
    Body e = ellipse();
    for (const Rational& pr :
         {Rational(1, 2), Rational(2), Rational(5), Rational(-1)}) {
        PParam p = PParam::finite(pr);
        CoeffResult a = asp_boundary(e, p);
        CoeffResult b = asp_sphere(e, p);
        CAPTURE(pr.str());
        CHECK(b.value == Approx(a.value).epsilon(1e-8));
    }
    CoeffResult a3 = asp_boundary(ellipsoid3(), PParam::finite(2));
    CoeffResult b3 = asp_sphere(ellipsoid3(), PParam::finite(2));
    CHECK(b3.value == Approx(a3.value).epsilon(1e-7));

    // Same agreement entry-by-entry for the coefficient tables.
    PParam ph = PParam::finite(1, 2);
    for (int k = 0; k <= 3; ++k)
        for (int m = 0; m <= std::min(k, 2); ++m) {
            CoeffResult w = W_pmk(e, ph, m, k);
            CoeffResult z = Z_pmk(e, ph, m, k);
            CAPTURE(m, k);
            CHECK(z.value ==
                  Approx(w.value).epsilon(1e-8).margin(1e-10));
        }
}

TEST_CASE("infinite-parameter surface area equals n times the polar volume") {
    Body e = ellipse();
    // Polar of the (1,2)-ellipse is the (1,1/2)-ellipse: n * vol = pi.
    const double expect = 3.14159265358979324;
    CHECK(asp_sphere(e, PParam::plus_inf()).value == Approx(expect).epsilon(1e-10));
    CHECK(asp_boundary(e, PParam::plus_inf()).value == Approx(expect).epsilon(1e-8));
    // Both infinities are the same member of the family.
    CHECK(asp_sphere(e, PParam::minus_inf()).value ==
          asp_sphere(e, PParam::plus_inf()).value);
    // Cross-check through the polar body's dual volume.
    CoeffResult pv = dual_querm(polar_of(e), 0.0);
    CHECK(2.0 * pv.value == Approx(expect).epsilon(1e-10));
}

TEST_CASE("supremum member of the family") {
    for (double r : {0.5, 1.0, 1.3}) {
        CoeffResult c = as_minus_n(make_ball(2, r));
        CHECK(c.value == Approx(r * r).epsilon(1e-12));
        CHECK(c.error_estimate <= 1e-12);
    }
    CHECK(as_minus_n(make_ball(3, 1.3)).value == Approx(1.3 * 1.3 * 1.3).epsilon(1e-12));
    // On ellipsoids the objective is constant: the product of the semi-axes.
    CHECK(as_minus_n(ellipse()).value == Approx(2.0).epsilon(1e-9));
    CHECK(as_minus_n(ellipsoid3()).value == Approx(0.96).epsilon(1e-9));
}

TEST_CASE("two-index surface areas reduce to the plain family and to the sphere measure") {
    Body e = ellipse();
    // s = 0 is the plain family member.
    CHECK(mixed_asa(e, PParam::finite(1, 2), Rational(0)).value ==
          Approx(asp_boundary(e, PParam::finite(1, 2)).value).epsilon(1e-12));
    CHECK(mixed_asa(e, PParam::plus_inf(), Rational(0)).value ==
          Approx(asp_boundary(e, PParam::plus_inf()).value).epsilon(1e-12));
    // s = n integrates the full curvature: the image of the normal map is the
    // whole sphere, whatever the body.
    CHECK(mixed_asa(e, PParam::finite(2), Rational(2)).value ==
          Approx(kTwoPi).epsilon(1e-9));
    CHECK(mixed_asa(ellipsoid3(), PParam::finite(1), Rational(3)).value ==
          Approx(kFourPi).epsilon(1e-7));
}

TEST_CASE("weight-zero coefficients are two-index surface areas") {
    struct Case {
        Rational p;
        int k;
    };
    Body e = ellipse();
    for (const Case& c : {Case{Rational(1, 2), 1}, Case{Rational(2), 3},
                          Case{Rational(-1), 2}}) {
        PParam p = PParam::finite(c.p);
        Rational pprime = c.p + Rational(c.k, 2) * (Rational(2) + c.p);
        CoeffResult w = W_pmk(e, p, 0, c.k);
        CoeffResult m = mixed_asa(e, PParam::finite(pprime), Rational(-c.k));
        CAPTURE(c.p.str(), c.k);
        CHECK(m.value == Approx(w.value).epsilon(1e-8));
    }
    // Same identity in dimension 3.
    Rational p3(2);
    Rational pprime3 = p3 + Rational(2, 3) * (Rational(3) + p3);
    CHECK(mixed_asa(ellipsoid3(), PParam::finite(pprime3), Rational(-2)).value ==
          Approx(W_pmk(ellipsoid3(), PParam::finite(p3), 0, 2).value).epsilon(1e-7));
}

TEST_CASE("coefficient tables on balls match the composition sums exactly") {
    struct MK {
        int m, k;
    };
    const MK grid2[] = {{0, 0}, {1, 1}, {1, 2}, {2, 3}, {0, 2}};
    for (const Rational& pr : {Rational(1, 2), Rational(-3)}) {
        PParam p = PParam::finite(pr);
        double alpha = exponents_for(2, p).alpha_rat.to_double();
        for (double r : {0.5, 2.0})
            for (const MK& mk : grid2) {
                Body b = make_ball(2, r);
                double expect = std::pow(r, alpha - mk.k) * kTwoPi *
                                F_m(2, pr, mk.m).to_double();
                CAPTURE(pr.str(), r, mk.m, mk.k);
                CHECK(W_pmk(b, p, mk.m, mk.k).value ==
                      Approx(expect).epsilon(1e-10).margin(1e-12));
                CHECK(Z_pmk(b, p, mk.m, mk.k).value ==
                      Approx(expect).epsilon(1e-10).margin(1e-12));
            }
    }
    const MK grid3[] = {{0, 0}, {1, 1}, {2, 2}, {1, 3}};
    PParam p3 = PParam::finite(2);
    double alpha3 = exponents_for(3, p3).alpha_rat.to_double();
    for (const MK& mk : grid3) {
        Body b = make_ball(3, 1.3);
        double expect = std::pow(1.3, alpha3 - mk.k) * kFourPi *
                        F_m(3, Rational(2), mk.m).to_double();
        CAPTURE(mk.m, mk.k);
        CHECK(W_pmk(b, p3, mk.m, mk.k).value == Approx(expect).epsilon(1e-10));
    }
    // Infinite parameter: only the weight-zero row survives, exactly.
    Body b = make_ball(2, 2.0);
    CHECK(W_pmk(b, PParam::plus_inf(), 0, 2).value ==
          Approx(std::pow(2.0, -2 - 2) * kTwoPi).epsilon(1e-10));
    CHECK(W_pmk(b, PParam::plus_inf(), 1, 2).value == 0.0);
    CHECK(W_pmk(b, PParam::minus_inf(), 2, 2).value == 0.0);
}

TEST_CASE("expansion coefficients on balls match the binomial closed form") {
    for (int n : {2, 3}) {
        std::vector<Rational> ps = {Rational(0),     Rational(1),  Rational(2),
                                    Rational(1, 2),  Rational(7, 2), Rational(-5),
                                    Rational(-7, 2)};
        if (n == 2) ps.push_back(Rational(-3));  // excluded for n = 3: that is the pole
        for (const Rational& pr : ps) {
            if (pr == Rational(-n)) continue;
            PParam p = PParam::finite(pr);
            double alpha = exponents_for(n, p).alpha_rat.to_double();
            for (double r : {0.5, 1.0, 2.0}) {
                std::vector<CoeffResult> table = V_pk_table(make_ball(n, r), p, 6);
                for (int k = 0; k <= 6; ++k) {
                    double expect = std::pow(r, alpha - k) * unit_sphere_measure(n) *
                                    C_npk_closed(n, pr, k).to_double();
                    CAPTURE(n, pr.str(), r, k);
                    CHECK(table[static_cast<std::size_t>(k)].value ==
                          Approx(expect).epsilon(1e-10).margin(1e-10));
                }
            }
        }
        // Infinite parameter closed form.
        std::vector<CoeffResult> ti = V_pk_table(make_ball(n, 1.0), PParam::plus_inf(), 5);
        for (int k = 0; k <= 5; ++k)
            CHECK(ti[static_cast<std::size_t>(k)].value ==
                  Approx(unit_sphere_measure(n) * gen_binom(Rational(-n), k).to_double())
                      .epsilon(1e-10)
                      .margin(1e-12));
    }
}

TEST_CASE("expansion coefficients on the ellipse are frozen") {
    Body e = ellipse();
    std::vector<CoeffResult> t2 = V_pk_table(e, PParam::finite(2), 3);
    CHECK(t2[0].value == Approx(kV2Ellipse[0]).epsilon(1e-9));
    CHECK(std::fabs(t2[1].value) <= 1e-9);
    CHECK(t2[2].value == Approx(kV2Ellipse[2]).epsilon(1e-8));
    CHECK(t2[3].value == Approx(kV2Ellipse[3]).epsilon(1e-8));

    std::vector<CoeffResult> tm1 = V_pk_table(e, PParam::finite(-1), 6);
    for (int k = 0; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(tm1[static_cast<std::size_t>(k)].value ==
              Approx(kVm1Ellipse[k]).epsilon(1e-8));
    }
    // The top coefficient of this terminating expansion is exactly 2 pi.
    CHECK(tm1[6].value == Approx(kTwoPi).epsilon(1e-9));
}

TEST_CASE("terminating parameters are recognised and expansions stop exactly") {
    CHECK(finite_sum_order(2, PParam::finite(0)) == 1);
    CHECK(finite_sum_order(2, PParam::finite(-1)) == 2);
    CHECK(finite_sum_order(2, PParam::finite(Rational(-4, 3))) == 3);
    CHECK(finite_sum_order(3, PParam::finite(Rational(-3, 2))) == 2);
    CHECK(finite_sum_order(2, PParam::finite(1, 2)) == 0);
    CHECK(finite_sum_order(2, PParam::plus_inf()) == 0);
    CHECK(finite_sum_order(3, PParam::finite(-5)) == 0);

    Body e = ellipse();
    SeriesResult s = series_asp(e, PParam::finite(-1), 40);
    CHECK(s.truncation == SeriesResult::Truncation::finite_sum);
    CHECK(std::string(truncation_name(s.truncation)) == "finite-sum");
    CHECK(s.k_max == 6);
    REQUIRE(s.coefficients.size() == 7);
    REQUIRE(s.errors.size() == 7);
    for (int k = 0; k <= 6; ++k)
        CHECK(s.coefficients[static_cast<std::size_t>(k)] ==
              Approx(kVm1Ellipse[k]).epsilon(1e-8));

    // Requesting fewer coefficients trims the same values.
    SeriesResult s4 = series_asp(e, PParam::finite(-1), 4);
    CHECK(s4.k_max == 4);
    CHECK(s4.coefficients.size() == 5);

    // p = 0 terminates at degree n and reproduces n times the classical
    // parallel-volume polynomial: n * (area + perimeter t + pi t^2).
    SeriesResult s0 = series_asp(e, PParam::finite(0), 40);
    CHECK(s0.truncation == SeriesResult::Truncation::finite_sum);
    CHECK(s0.k_max == 2);
    CHECK(s0.t_validity == Approx(1.0).epsilon(1e-12));
    REQUIRE(s0.coefficients.size() == 3);
    CHECK(s0.coefficients[0] == Approx(2.0 * kEllipseArea).epsilon(1e-10));
    CHECK(s0.coefficients[1] == Approx(2.0 * kEllipsePerimeter).epsilon(1e-9));
    CHECK(s0.coefficients[2] == Approx(2.0 * 3.14159265358979324).epsilon(1e-9));
}

TEST_CASE("infinite expansions truncate honestly and evaluate close to direct") {
    // For the (1,2)-ellipse the parallel-body map has a singularity at
    // t = -1/2 (the smallest curvature radius), so the coefficients decay
    // like 2^k / k^(3/2): at the reference point the tail cannot be
    // certified small, and the result must say so rather than pretend.
    Body e = ellipse();
    SeriesResult s = series_asp(e, PParam::finite(2), 40, 1e-9);
    CHECK(s.truncation == SeriesResult::Truncation::max_k_reached);
    CHECK(has_flag(s.flags, "max-k-reached"));
    CHECK(s.k_max == 40);
    CHECK(s.coefficients.size() == 41);
    CHECK(s.coefficients[0] == Approx(kV2Ellipse[0]).epsilon(1e-9));
    CHECK(s.coefficients[2] == Approx(kV2Ellipse[2]).epsilon(1e-7));

    // Inside the safe range the truncated polynomial is still accurate.
    for (double t : {0.05, 0.4}) {
        double direct = direct_asp_parallel(e, PParam::finite(2), t).value;
        CAPTURE(t);
        CHECK(series_eval(s, t) == Approx(direct).epsilon(1e-6));
    }

    // Balls have genuinely decaying coefficients and do report convergence.
    SeriesResult sb = series_asp(make_ball(2, 1.0), PParam::finite(1, 2), 40, 1e-9);
    CHECK(sb.truncation == SeriesResult::Truncation::converged);
    CHECK(sb.k_max < 40);
    CHECK(sb.coefficients.size() == static_cast<std::size_t>(sb.k_max) + 1);
    double alpha = exponents_for(2, PParam::finite(1, 2)).alpha_rat.to_double();
    CHECK(series_eval(sb, 0.4) ==
          Approx(std::pow(1.4, alpha) * kTwoPi).epsilon(1e-9));

    // At p = n every coefficient beyond k = 0 vanishes; detection trims fast.
    SeriesResult sn = series_asp(make_ball(2, 1.0), PParam::finite(2), 40, 1e-9);
    CHECK(sn.truncation == SeriesResult::Truncation::converged);
    CHECK(sn.k_max == 3);
    CHECK(sn.coefficients[0] == Approx(kTwoPi).epsilon(1e-10));
}

TEST_CASE("direct parallel-body evaluation matches closed forms") {
    // Balls: adding t is a radius shift, so the value is a pure power.
    PParam ph = PParam::finite(1, 2);
    double alpha = exponents_for(2, ph).alpha_rat.to_double();
    CHECK(direct_asp_parallel(make_ball(2, 1.0), ph, 0.3).value ==
          Approx(std::pow(1.3, alpha) * kTwoPi).epsilon(1e-9));
    CHECK(direct_asp_parallel(make_ball(2, 1.0), ph, 0.0).value ==
          Approx(kTwoPi).epsilon(1e-10));
    // p = 0: twice the area of the parallel body (classical polynomial).
    double t = 0.25;
    double expect = 2.0 * (kEllipseArea + kEllipsePerimeter * t +
                           3.14159265358979324 * t * t);
    CHECK(direct_asp_parallel(ellipse(), PParam::finite(0), t).value ==
          Approx(expect).epsilon(1e-8));
    CHECK_THROWS_AS(direct_asp_parallel(ellipse(), ph, -0.1), std::domain_error);
}

TEST_CASE("classical quermassintegrals on smooth and piecewise-smooth bodies") {
    // Ball in dimension 3: (4 pi / 3) r^(3-i).
    Body b3 = make_ball(3, 1.3);
    for (int i = 0; i <= 3; ++i) {
        CAPTURE(i);
        CHECK(classical_querm(b3, i).value ==
              Approx(kFourPi / 3.0 * std::pow(1.3, 3 - i)).epsilon(1e-10));
    }
    Body e = ellipse();
    CHECK(classical_querm(e, 0).value == Approx(kEllipseArea).epsilon(1e-10));
    CHECK(classical_querm(e, 1).value ==
          Approx(kEllipsePerimeter / 2.0).epsilon(1e-10));
    CHECK(classical_querm(e, 2).value == Approx(3.14159265358979324).epsilon(1e-10));

    // Box with half-width 0.7: volume and half the perimeter; the flat-face
    // convention assigns no corner mass to the higher ones.
    Body box = make_box(2, 0.7);
    CHECK(classical_querm(box, 0).value == Approx(1.96).epsilon(1e-12));
    CHECK(classical_querm(box, 1).value == Approx(2.8).epsilon(1e-12));
    CHECK(classical_querm(box, 2).value == 0.0);

    // Rounded unit cube (l = 2): every piece contributes in closed form.
    Body rc = make_rounded_cube(2, 2.0);
    CHECK(classical_querm(rc, 0).value ==
          Approx(3.0 + 3.14159265358979324 / 4.0).epsilon(1e-12));
    CHECK(classical_querm(rc, 1).value ==
          Approx((4.0 + 3.14159265358979324) / 2.0).epsilon(1e-12));
    CHECK(classical_querm(rc, 2).value == Approx(3.14159265358979324).epsilon(1e-12));

    CHECK_THROWS_AS(classical_querm(e, 3), std::domain_error);
    CHECK_THROWS_AS(classical_querm(e, -1), std::domain_error);
}

TEST_CASE("classical polynomial reconstructs the parallel volume") {
    Body rb = make_rounded_box(3, 0.5, 0.25);
    double w[4];
    for (int i = 0; i <= 3; ++i) w[i] = classical_querm(rb, i).value;
    for (double t : {0.3, 1.0}) {
        double predicted = 0.0;
        for (int i = 0; i <= 3; ++i)
            predicted += gen_binom(Rational(3), i).to_double() * w[i] * std::pow(t, i);
        double direct = classical_querm(minkowski_add_ball(rb, t), 0).value;
        CAPTURE(t);
        CHECK(direct == Approx(predicted).epsilon(1e-9));
    }
}

TEST_CASE("polytope coefficient values follow the flat-face convention") {
    Body box = make_box(2, 0.7);
    PParam p0 = PParam::finite(0);
    std::vector<CoeffResult> v0 = V_pk_table(box, p0, 4);
    CHECK(v0[0].value == Approx(2.0 * 1.96).epsilon(1e-12));
    CHECK(v0[1].value == Approx(5.6).epsilon(1e-12));
    CHECK(v0[2].value == 0.0);
    CHECK(v0[3].value == 0.0);
    CHECK(v0[4].value == 0.0);

    // Weight-zero coefficients at p = 0 are plain moments of <x,N>.
    CHECK(W_pmk(box, p0, 0, 0).value == Approx(0.7 * 5.6).epsilon(1e-12));
    CHECK(W_pmk(box, p0, 0, 1).value == Approx(5.6).epsilon(1e-12));
    CHECK(W_pmk(box, p0, 0, 2).value == Approx(5.6 / 0.7).epsilon(1e-12));

    // Away from p = 0 the positive curvature power kills every flat piece.
    for (const Rational& pr : {Rational(1), Rational(7, 2), Rational(-3)}) {
        std::vector<CoeffResult> v = V_pk_table(box, PParam::finite(pr), 3);
        for (int k = 0; k <= 3; ++k) {
            CAPTURE(pr.str(), k);
            CHECK(v[static_cast<std::size_t>(k)].value == 0.0);
        }
    }
    std::vector<CoeffResult> vi = V_pk_table(box, PParam::plus_inf(), 2);
    for (int k = 0; k <= 2; ++k) CHECK(vi[static_cast<std::size_t>(k)].value == 0.0);

    // Between -n and 0 the flat pieces genuinely diverge; that is reported
    // loudly, never silently truncated.
    CoeffResult bad = asp_boundary(box, PParam::finite(-1));
    CHECK_FALSE(std::isfinite(bad.value));
    CHECK(has_flag(bad.flags, "divergence-risk"));
    CHECK(has_flag(bad.flags, "p-range-note"));
}

TEST_CASE("first-order bridges: sphere-route totals and two-index identities") {
    Body e = ellipse();
    PParam p1 = PParam::finite(1);
    // At p = 1 the assembled totals equal the diagonal entries exactly.
    for (int k : {1, 2}) {
        CHECK(U_pk(e, p1, k).value == Z_pmk(e, p1, k, k).value);
        CHECK(V_pk(e, p1, k).value == W_pmk(e, p1, k, k).value);
    }
    // In the plane the diagonal entry is a two-index surface area.
    for (int l : {1, 2, 3}) {
        double lhs = W_pmk(e, p1, l, l).value;
        double rhs = gen_binom(Rational(2, 3), l).to_double() *
                     mixed_asa(e, p1, Rational(3 * l)).value;
        CAPTURE(l);
        CHECK(lhs == Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("rounded cubes collapse to their corner spheres at p = 1") {
    PParam p1 = PParam::finite(1);
    for (double l : {2.0, 4.0}) {
        Body kl = make_rounded_cube(2, l);
        for (int k = 0; k <= 4; ++k) {
            double expect = std::pow(l, k - 2.0 / 3.0) * kTwoPi *
                            C_npk_closed(2, Rational(1), k).to_double();
            CAPTURE(l, k);
            CHECK(W_pmk(kl, p1, k, k).value == Approx(expect).epsilon(1e-9));
        }
    }
    Body kl3 = make_rounded_cube(3, 2.0);
    for (int k = 0; k <= 3; ++k) {
        double expect = std::pow(2.0, k - 1.5) * kFourPi *
                        C_npk_closed(3, Rational(1), k).to_double();
        CAPTURE(k);
        CHECK(W_pmk(kl3, p1, k, k).value == Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("rounded-cube coefficients alternate in sign below the pole") {
    // For p = -3 in the plane, every composition term carries the sign
    // (-1)^k, so the totals alternate for every member of the family.
    PParam pm3 = PParam::finite(-3);
    for (double l : {8.0, 64.0}) {
        std::vector<CoeffResult> v = V_pk_table(make_rounded_cube(2, l), pm3, 3);
        CAPTURE(l);
        CHECK(v[0].value > 0.0);
        CHECK(v[1].value < 0.0);
        CHECK(v[2].value > 0.0);
        CHECK(v[3].value < 0.0);
    }
}

TEST_CASE("homogeneity and rotation invariance of the coefficients") {
    Body e = ellipse();
    PParam p = PParam::finite(1, 2);
    double alpha = exponents_for(2, p).alpha_rat.to_double();
    double a = 1.7;
    Body scaled = scale_body(e, a);
    Body rotated = rotate_body(e, rotation2d(0.73));
    for (int k = 0; k <= 2; ++k) {
        double base = V_pk(e, p, k).value;
        CAPTURE(k);
        CHECK(V_pk(scaled, p, k).value ==
              Approx(std::pow(a, alpha - k) * base).epsilon(1e-9));
        CHECK(V_pk(rotated, p, k).value == Approx(base).epsilon(1e-10));
    }
    Body e3 = ellipsoid3();
    PParam p3 = PParam::finite(2);
    Body rotated3 = rotate_body(e3, random_orthogonal(3, 42u));
    for (int k = 0; k <= 2; ++k) {
        CAPTURE(k);
        CHECK(V_pk(rotated3, p3, k).value ==
              Approx(V_pk(e3, p3, k).value).epsilon(1e-7).margin(1e-9));
    }
}

TEST_CASE("dual quermassintegrals and dual mixed volumes") {
    // Balls: (vol of the unit ball) * r^(n-i) at every real order.
    for (double i : {-1.0, 0.0, 0.5, 2.0})
        CHECK(dual_querm(make_ball(2, 1.3), i).value ==
              Approx(3.14159265358979324 * std::pow(1.3, 2 - i)).epsilon(1e-12));
    for (double i : {0.0, 1.5})
        CHECK(dual_querm(make_ball(3, 1.3), i).value ==
              Approx(kFourPi / 3.0 * std::pow(1.3, 3 - i)).epsilon(1e-10));

    Body e = ellipse();
    // Repeated body: the dual mixed volume is the volume at every order.
    CHECK(dual_mixed_volume(e, e, 0.7).value == Approx(kEllipseArea).epsilon(1e-10));
    // Unit-ball second slot reduces to the one-body form.
    CHECK(dual_mixed_volume(e, make_ball(2, 1.0), 0.5).value ==
          Approx(dual_querm(e, 0.5).value).epsilon(1e-12));
    // Frozen values for the ellipse.
    CHECK(dual_querm(e, 0.0).value == Approx(kEllipseArea).epsilon(1e-10));
    CHECK(dual_querm(e, 0.5).value == Approx(kDualHalfEllipse).epsilon(1e-9));
    CHECK(dual_querm(e, -1.0).value == Approx(kEllipsePerimeter).epsilon(1e-9));

    CHECK_THROWS_AS(dual_querm(translate_body(e, {0.1, 0.0, 0.0}), 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(dual_mixed_volume(e, make_ball(3, 1.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("results carry identifying tags and honest flags") {
    Body e = ellipse();
    CoeffResult w = W_pmk(e, PParam::finite(1, 2), 1, 2);
    CHECK(w.tag.name == "W_pmk");
    CHECK(w.tag.n == 2);
    CHECK(w.tag.p == "1/2");
    CHECK(w.tag.m == 1);
    CHECK(w.tag.k == 2);
    CHECK(w.tag.body.find("ellipsoid") != std::string::npos);
    CHECK(w.error_estimate >= 0.0);
    CHECK(w.error_estimate < 1e-8);

    CoeffResult d = dual_mixed_volume(e, make_ball(2, 1.0), 1.0);
    CHECK(d.tag.body.find(" | ") != std::string::npos);

    // A well-behaved body in the negative range gets the range note but no
    // divergence warning; a body with vanishing curvature gets both.
    CoeffResult ok = asp_boundary(e, PParam::finite(-1));
    CHECK(has_flag(ok.flags, "p-range-note"));
    CHECK_FALSE(has_flag(ok.flags, "divergence-risk"));
    CoeffResult risky = asp_boundary(make_lr_ball(2, 4.0), PParam::finite(-1));
    CHECK(has_flag(risky.flags, "divergence-risk"));
}

TEST_CASE("argument validation") {
    Body e = ellipse();
    PParam p = PParam::finite(1);
    CHECK_THROWS_AS(W_pmk(e, p, 2, 1), std::domain_error);
    CHECK_THROWS_AS(W_pmk(e, p, -1, 1), std::domain_error);
    CHECK_THROWS_AS(W_pmk(e, PParam::finite(-2), 0, 0), std::domain_error);
    CHECK_THROWS_AS(V_pk(e, p, -1), std::domain_error);
    CHECK_THROWS_AS(boundary_table(e, p, 97), std::domain_error);
    CHECK_THROWS_AS(series_asp(e, p, 200), std::domain_error);
    Body noradial = translate_body(e, {0.05, 0.0, 0.0});
    CHECK_THROWS_AS(dual_querm(noradial, 1.0), std::domain_error);
}
