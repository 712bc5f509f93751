// Tests for the adaptive boundary/sphere quadrature engine.
//
// Expected values were computed independently with mpmath (dps=40) from the
// defining parametrizations (arc length / surface area integrals), or are
// closed forms (circle and sphere measures, rounded-box piece sums, box
// perimeters).  They are frozen here at 17 significant digits.

#include <catch2/catch_amalgamated.hpp>

#include "lpsteiner/catalog.hpp"
#include "lpsteiner/quadrature.hpp"

#include <cstdlib>
#include <cstring>

using namespace lpsteiner;

namespace {

constexpr double kPi = 3.14159265358979324;

struct ThreadCountGuard {
    explicit ThreadCountGuard(int n) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%d", n);
        setenv("LPSTEINER_THREADS", buf, 1);
    }
    ~ThreadCountGuard() { unsetenv("LPSTEINER_THREADS"); }
};

double body_volume(const Body& body) {
    IntegralEstimate est = integrate_boundary_scalar(
        body, [&](const BoundaryJet& j) { return j.support_dot / body.n; });
    REQUIRE(est.converged);
    return est.value;
}

double body_measure(const Body& body) {
    IntegralEstimate est = boundary_measure(body);
    REQUIRE(est.converged);
    return est.value;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules are symmetric and exact on polynomials") {
    const GLRule& r = gauss_legendre(16);
    REQUIRE(r.x.size() == 16);
    double wsum = 0.0;
    for (double w : r.w) wsum += w;
    CHECK(wsum == Catch::Approx(2.0).margin(1e-13));
    for (int i = 0; i < 16; ++i) {
        CHECK(r.x[i] == Catch::Approx(-r.x[15 - i]).margin(1e-15));
        CHECK(r.w[i] == Catch::Approx(r.w[15 - i]).margin(1e-15));
    }
    // 16 nodes integrate degree <= 31 exactly.
    double m30 = 0.0, m31 = 0.0;
    for (int i = 0; i < 16; ++i) {
        m30 += r.w[i] * std::pow(r.x[i], 30);
        m31 += r.w[i] * std::pow(r.x[i], 31);
    }
    CHECK(m30 == Catch::Approx(2.0 / 31.0).epsilon(1e-13));
    CHECK(std::fabs(m31) < 1e-15);
    // The cache hands back the same object.
    CHECK(&gauss_legendre(16) == &r);
}

TEST_CASE("sphere rule reproduces measures and moments") {
    IntegralEstimate c2 = integrate_sphere_scalar(2, [](const Vec3&) { return 1.0; });
    CHECK(c2.converged);
    CHECK(c2.value == Catch::Approx(6.2831853071795865).epsilon(1e-12));

    IntegralEstimate cos2 = integrate_sphere_scalar(2, [](const Vec3& u) { return u[0] * u[0]; });
    CHECK(cos2.value == Catch::Approx(kPi).epsilon(1e-12));

    IntegralEstimate c3 = integrate_sphere_scalar(3, [](const Vec3&) { return 1.0; });
    CHECK(c3.converged);
    CHECK(c3.value == Catch::Approx(12.566370614359173).epsilon(1e-12));

    IntegralEstimate z2 = integrate_sphere_scalar(3, [](const Vec3& u) { return u[2] * u[2]; });
    CHECK(z2.value == Catch::Approx(4.1887902047863910).epsilon(1e-12));
}

TEST_CASE("boundary measure matches frozen perimeter and area values") {
    CHECK(body_measure(make_ellipsoid({1.0, 2.0})) ==
          Catch::Approx(9.6884482205476762).epsilon(1e-9));
    CHECK(body_measure(make_ball(2, 1.7, {0.2, -0.1, 0.0})) ==
          Catch::Approx(2.0 * kPi * 1.7).epsilon(1e-10));
    CHECK(body_measure(make_ellipsoid({1.0, 1.3, 1.7})) ==
          Catch::Approx(22.122939137537988).epsilon(1e-9));
    CHECK(body_measure(make_ball(3, 1.3)) ==
          Catch::Approx(4.0 * kPi * 1.69).epsilon(1e-10));
    CHECK(body_measure(make_lr_ball(2, 4.0)) ==
          Catch::Approx(7.0176979435640416).epsilon(1e-9));
    CHECK(body_measure(make_rounded_box(2, 0.5, 0.5)) ==
          Catch::Approx(4.0 + kPi).epsilon(1e-10));
    CHECK(body_measure(make_rounded_box(3, 0.5, 0.25)) ==
          Catch::Approx(6.0 + 1.75 * kPi).epsilon(1e-9));
    CHECK(body_measure(make_capped_ellipsoid({1.0, 2.0}, 0, 0.2, "below")) ==
          Catch::Approx(9.1740814730740866).epsilon(1e-9));
    CHECK(body_measure(make_box(2, 0.7)) == Catch::Approx(5.6).epsilon(1e-10));
}

TEST_CASE("support integrand recovers enclosed volume via the divergence theorem") {
    CHECK(body_volume(make_ellipsoid({1.0, 2.0})) == Catch::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(body_volume(make_rounded_box(2, 0.5, 0.5)) ==
          Catch::Approx(3.0 + kPi / 4.0).epsilon(1e-10));
    CHECK(body_volume(make_rounded_box(3, 0.5, 0.25)) ==
          Catch::Approx(3.1544984694978736).epsilon(1e-9));
    CHECK(body_volume(make_lr_ball(2, 4.0)) ==
          Catch::Approx(3.7081493546027438).epsilon(1e-9));
    CHECK(body_volume(make_box(2, 0.7)) == Catch::Approx(1.96).epsilon(1e-12));
    CHECK(body_volume(make_ball(2, 1.7, {0.2, -0.1, 0.0})) ==
          Catch::Approx(kPi * 1.7 * 1.7).epsilon(1e-10));
    // Volume is translation invariant even though <x,N> pointwise is not.
    CHECK(body_volume(translate_body(make_ellipsoid({1.0, 2.0}), {0.3, -0.2, 0.0})) ==
          Catch::Approx(2.0 * kPi).epsilon(1e-9));
}

TEST_CASE("multi-component integration agrees with scalar runs") {
    Body e = make_ellipsoid({1.0, 2.0});
    auto fill = [](const BoundaryJet& j, double* out) {
        out[0] = 1.0;
        out[1] = j.support_dot;
        out[2] = j.H[1];
    };
    std::vector<double> multi = integrate_boundary_fixed(e, 3, fill, 8);
    std::vector<double> s0 = integrate_boundary_fixed(
        e, 1, [](const BoundaryJet&, double* out) { out[0] = 1.0; }, 8);
    std::vector<double> s1 = integrate_boundary_fixed(
        e, 1, [](const BoundaryJet& j, double* out) { out[0] = j.support_dot; }, 8);
    std::vector<double> s2 = integrate_boundary_fixed(
        e, 1, [](const BoundaryJet& j, double* out) { out[0] = j.H[1]; }, 8);
    CHECK(multi[0] == s0[0]);
    CHECK(multi[1] == s1[0]);
    CHECK(multi[2] == s2[0]);

    MultiEstimate adaptive = integrate_boundary(e, 3, fill);
    REQUIRE(adaptive.converged);
    CHECK(adaptive.values[0] == Catch::Approx(9.6884482205476762).epsilon(1e-9));
    CHECK(adaptive.values[1] == Catch::Approx(4.0 * kPi).epsilon(1e-10));  // 2 * area
    CHECK(adaptive.values[2] == Catch::Approx(2.0 * kPi).epsilon(1e-10));  // turning angle
}

TEST_CASE("results are bit-identical for any thread count") {
    Body e = make_ellipsoid({1.0, 2.0});
    Body s = make_ellipsoid({1.0, 1.3, 1.7});
    auto fill2 = [](const BoundaryJet& j, double* out) {
        out[0] = 1.0;
        out[1] = j.support_dot * j.H[1];
    };
    std::vector<std::vector<double>> fixed2, fixed3;
    std::vector<MultiEstimate> adaptive;
    for (int nt : {1, 2, 3, 5, 8}) {
        ThreadCountGuard guard(nt);
        fixed2.push_back(integrate_boundary_fixed(e, 2, fill2, 12));
        fixed3.push_back(integrate_boundary_fixed(s, 2, fill2, 7));
        adaptive.push_back(integrate_boundary(e, 2, fill2));
    }
    for (std::size_t i = 1; i < fixed2.size(); ++i) {
        CHECK(std::memcmp(fixed2[i].data(), fixed2[0].data(), 2 * sizeof(double)) == 0);
        CHECK(std::memcmp(fixed3[i].data(), fixed3[0].data(), 2 * sizeof(double)) == 0);
        CHECK(adaptive[i].level == adaptive[0].level);
        CHECK(std::memcmp(adaptive[i].values.data(), adaptive[0].values.data(),
                          2 * sizeof(double)) == 0);
        CHECK(std::memcmp(adaptive[i].errors.data(), adaptive[0].errors.data(),
                          2 * sizeof(double)) == 0);
    }
}

TEST_CASE("convergence flags and error estimates are honest") {
    // Smooth integrand: converges quickly and the reported error is a bound.
    IntegralEstimate smooth = integrate_sphere_scalar(2, [](const Vec3&) { return 1.0; });
    CHECK(smooth.converged);
    CHECK(smooth.level <= 9);
    CHECK(std::fabs(smooth.value - 6.2831853071795865) <= std::max(smooth.error, 1e-12));

    // |u0|^(1/2) has cusps: the midpoint rule cannot reach 1e-14 by level 14.
    IntegralEstimate rough = integrate_sphere_scalar(
        2, [](const Vec3& u) { return std::sqrt(std::fabs(u[0])); }, 1e-14);
    CHECK_FALSE(rough.converged);
    CHECK(rough.level == 14);
    CHECK(rough.value == Catch::Approx(4.7925609389423688).epsilon(1e-4));
    CHECK(std::fabs(rough.value - 4.7925609389423688) <= 2.0 * rough.error);
}

TEST_CASE("synthetic regions: parameter box, density, zero-width regions") {
    Body b;
    b.n = 3;
    Region square;
    square.label = "square";
    square.pdim = 2;
    square.lo = {0.0, 0.0};
    square.hi = {1.0, 1.0};
    square.jet = [](double a, double bpar) {
        BoundaryJet j;
        j.n = 3;
        j.x = {a, bpar, 0.0};
        j.normal = {0.0, 0.0, 1.0};
        j.support_dot = 1.0;
        j.H = {1.0, 0.0, 0.0};
        return j;
    };
    square.density = [](double, double) { return 1.0; };
    Region empty = square;
    empty.label = "empty";
    empty.hi = {0.0, 1.0};  // zero width in the first parameter
    b.regions = {square, empty};

    MultiEstimate est = integrate_boundary(b, 2, [](const BoundaryJet& j, double* out) {
        out[0] = 6.0 * j.x[0] * j.x[1];  // integrates to 6 * (1/2) * (1/2)
        out[1] = 1.0;
    });
    REQUIRE(est.converged);
    CHECK(est.values[0] == Catch::Approx(1.5).epsilon(1e-12));
    CHECK(est.values[1] == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrand exceptions propagate out of worker threads") {
    ThreadCountGuard guard(4);
    CHECK_THROWS_AS(integrate_sphere_scalar(3,
                                            [](const Vec3& u) {
                                                if (u[2] > 0.99)
                                                    throw std::domain_error("probe");
                                                return 1.0;
                                            }),
                    std::domain_error);
}
