#pragma once

// Curvature-power functionals of convex bodies.
//
// Everything in this header evaluates integrals of the shape
//
//     boundary:  <x,N>^(beta-d) * H_{n-1}^cp * G_m(H_1..H_{n-1})      dH^{n-1}
//     sphere:    h^(beta-d)     * s_{n-1}^sp * G~_m(s_0..s_{n-1})     dsigma
//
// with   cp = p/(n+p),  beta = n(1-p)/(n+p),  sp = n/(n+p)
// and G_m the weight-m composition sum from the combinatorics layer.  The
// two infinite parameter values are a dedicated exact path (cp = 1,
// beta = -n, sp = 0) rather than a numeric limit.
//
// Conventions:
//  - powz(base, e): e = 0 gives 1 (so flat pieces contribute through the
//    e = 0 paths); base <= 0 with e > 0 gives 0 (flat pieces vanish); base
//    <= 0 with e < 0 gives +infinity (divergence is made loud, never hidden).
//  - Every result carries an error estimate (propagated quadrature deltas)
//    and a list of advisory flags; flags never alter values.

#include "lpsteiner/body.hpp"
#include "lpsteiner/combinatorics.hpp"
#include "lpsteiner/format.hpp"
#include "lpsteiner/quadrature.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace lpsteiner {

// ---------------------------------------------------------------------------
// The exponent parameter p, with the two infinities kept symbolic.

class PParam {
  public:
    enum class Kind { finite, plus_inf, minus_inf };

    PParam() = default;
    static PParam finite(const Rational& v) {
        PParam p;
        p.kind_ = Kind::finite;
        p.value_ = v;
        return p;
    }
    static PParam finite(long long num, long long den = 1) {
        return finite(Rational(num, den));
    }
    static PParam plus_inf() {
        PParam p;
        p.kind_ = Kind::plus_inf;
        return p;
    }
    static PParam minus_inf() {
        PParam p;
        p.kind_ = Kind::minus_inf;
        return p;
    }

    Kind kind() const { return kind_; }
    bool is_inf() const { return kind_ != Kind::finite; }
    const Rational& value() const {
        if (is_inf()) throw std::domain_error("PParam: infinite p has no rational value");
        return value_;
    }

    // Canonical text form: "num/den", "inf", or "-inf".
    std::string str() const {
        if (kind_ == Kind::plus_inf) return "inf";
        if (kind_ == Kind::minus_inf) return "-inf";
        return value_.str();
    }

    double to_double() const {
        if (kind_ == Kind::plus_inf) return std::numeric_limits<double>::infinity();
        if (kind_ == Kind::minus_inf) return -std::numeric_limits<double>::infinity();
        return value_.to_double();
    }

  private:
    Kind kind_ = Kind::finite;
    Rational value_;
};

// Accepts "a/b", an integer, a plain decimal, or "inf"/"-inf"/"+inf".
inline PParam parse_p(const std::string& s) {
    if (s == "inf" || s == "+inf") return PParam::plus_inf();
    if (s == "-inf") return PParam::minus_inf();
    return PParam::finite(Rational::parse(s));
}

struct Exponents {
    double curv_pow = 0.0;    // exponent of H_{n-1} on the boundary
    double beta = 0.0;        // n(1-p)/(n+p); base boundary <x,N> exponent
    double sphere_pow = 0.0;  // exponent of s_{n-1} on the sphere
    Rational beta_rat;        // exact beta (also exact at +-inf: -n)
    Rational alpha_rat;       // n(n-p)/(n+p), the k = 0 homogeneity degree
    bool is_inf = false;
};

inline Exponents exponents_for(int n, const PParam& p) {
    if (n < 2) throw std::domain_error("exponents_for: dimension n must be >= 2");
    Exponents e;
    if (p.is_inf()) {
        e.curv_pow = 1.0;
        e.beta = -static_cast<double>(n);
        e.sphere_pow = 0.0;
        e.beta_rat = Rational(-n);
        e.alpha_rat = Rational(-n);
        e.is_inf = true;
        return e;
    }
    const Rational& pv = p.value();
    if (pv == Rational(-n)) throw std::domain_error("p = -n is a pole");
    Rational np = Rational(n) + pv;
    Rational cp = pv / np;
    e.beta_rat = Rational(n) * (Rational(1) - pv) / np;
    e.alpha_rat = Rational(n) * (Rational(n) - pv) / np;
    e.curv_pow = cp.to_double();
    e.beta = e.beta_rat.to_double();
    e.sphere_pow = (Rational(n) / np).to_double();
    return e;
}

// Power with the flat-face convention (see header comment).
inline double powz(double base, double e) {
    if (e == 0.0) return 1.0;
    if (base <= 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::pow(base, e);
}

// ---------------------------------------------------------------------------
// Results

struct FunctionalTag {
    std::string name;  // which functional
    int n = 0;
    std::string p;     // canonical parameter string; empty when not applicable
    int m = -1, k = -1;  // -1 when not applicable
    std::string body;  // catalog spec of the body evaluated
};

struct CoeffResult {
    double value = 0.0;
    double error_estimate = 0.0;
    FunctionalTag tag;
    std::vector<std::string> flags;
};

namespace detail {

inline void add_range_flags(const Body& body, int n, const PParam& p, const Exponents& e,
                            std::vector<std::string>& flags) {
    if (!p.is_inf() && p.value() > Rational(-n) && p.value() < Rational(0))
        flags.push_back("p-range-note");
    bool curvature_bounded_below =
        body.smoothness == Smoothness::C2Plus ||
        (body.smoothness == Smoothness::RollingClass && body.rolling_outer <
                                                            std::numeric_limits<double>::infinity());
    if (e.curv_pow < 0.0 && !curvature_bounded_below) flags.push_back("divergence-risk");
}

// G_m as explicit power-product terms: coeff * A^e1 * B^e2 where (A, B) are
// (H_1, H_2) on the boundary and (s_1, s_2-slot) on the sphere.
struct GTerm {
    double coeff = 0.0;
    int e1 = 0, e2 = 0;  // e2 is always 0 for n = 2
    int q = 0;           // composition size i_1 + ... + i_{n-1}
};

inline std::vector<std::vector<GTerm>> g_terms(int n, const PParam& p, int mmax) {
    std::vector<std::vector<GTerm>> terms(static_cast<std::size_t>(mmax) + 1);
    if (p.is_inf()) {
        terms[0].push_back({1.0, 0, 0, 0});  // gen_binom(0, q) kills every m >= 1
        return terms;
    }
    for (int m = 0; m <= mmax; ++m) {
        for (const WeightedComposition& comp : weighted_compositions(m, n - 1)) {
            Rational c = c_npi(n, p.value(), comp);
            for (std::size_t j = 0; j < comp.size(); ++j)
                for (int rep = 0; rep < comp[j]; ++rep)
                    c *= Rational(binom_int(n - 1, static_cast<int>(j + 1)));
            GTerm t;
            t.coeff = c.to_double();
            t.e1 = comp[0];
            t.e2 = n >= 3 ? comp[1] : 0;
            t.q = composition_size(comp);
            if (t.coeff != 0.0) terms[static_cast<std::size_t>(m)].push_back(t);
        }
    }
    return terms;
}

constexpr int kMaxTableK = 96;

}  // namespace detail

// Triangular table of the pair integrals: entry (d, m), d + m <= kmax, holds
// the boundary (or sphere) integral with <x,N> (or h) exponent beta - d and
// composition weight m.  W^p_{m,k} is entry (k - m, m).
struct SteinerTable {
    int n = 2;
    int kmax = 0;
    std::vector<double> value, error;
    bool converged = true;
    std::vector<std::string> flags;

    int idx(int d, int m) const {
        // rows d = 0..kmax, row d has kmax + 1 - d entries
        return d * (kmax + 1) - d * (d - 1) / 2 + m;
    }
    double w(int m, int k) const { return value[static_cast<std::size_t>(idx(k - m, m))]; }
    double w_err(int m, int k) const {
        return error[static_cast<std::size_t>(idx(k - m, m))];
    }
};

namespace detail {

inline void check_table_k(int kmax) {
    if (kmax < 0 || kmax > kMaxTableK)
        throw std::domain_error("coefficient table: k out of supported range");
}

inline int table_components(int kmax) { return (kmax + 1) * (kmax + 2) / 2; }

inline SteinerTable table_from_estimate(const Body& body, int kmax, MultiEstimate est) {
    SteinerTable table;
    table.n = body.n;
    table.kmax = kmax;
    table.value = std::move(est.values);
    table.error = std::move(est.errors);
    table.converged = est.converged;
    if (!est.converged) table.flags.push_back("unconverged");
    return table;
}

}  // namespace detail

// Boundary-route table over partial(K).
inline SteinerTable boundary_table(const Body& body, const PParam& p, int kmax,
                                   double tol = 1e-10) {
    detail::check_table_k(kmax);
    Exponents e = exponents_for(body.n, p);
    auto terms = detail::g_terms(body.n, p, kmax);
    const int n = body.n;
    auto fill = [&, e, n, kmax](const BoundaryJet& jet, double* out) {
        if (!(jet.support_dot > 0.0))
            throw std::domain_error("boundary integrand: origin must be interior");
        double h1p[detail::kMaxTableK + 1], h2p[detail::kMaxTableK + 1];
        h1p[0] = 1.0;
        h2p[0] = 1.0;
        for (int i = 1; i <= kmax; ++i) {
            h1p[i] = h1p[i - 1] * jet.H[1];
            h2p[i] = n >= 3 ? h2p[i - 1] * jet.H[2] : 0.0;
        }
        double gm[detail::kMaxTableK + 1];
        for (int m = 0; m <= kmax; ++m) {
            double g = 0.0;
            for (const detail::GTerm& t : terms[static_cast<std::size_t>(m)])
                g += t.coeff * h1p[t.e1] * h2p[t.e2];
            gm[m] = g;
        }
        double hp = powz(jet.H[n - 1], e.curv_pow);
        double td = std::pow(jet.support_dot, e.beta);
        int pos = 0;
        for (int d = 0; d <= kmax; ++d) {
            double base = td * hp;
            for (int m = 0; m + d <= kmax; ++m) out[pos++] = base * gm[m];
            td /= jet.support_dot;
        }
    };
    SteinerTable t = detail::table_from_estimate(
        body, kmax, integrate_boundary(body, detail::table_components(kmax), fill, tol));
    detail::add_range_flags(body, body.n, p, e, t.flags);
    return t;
}

// Sphere-route table over S^{n-1} (Gauss-map form); needs body.sphere_jet.
inline SteinerTable sphere_table(const Body& body, const PParam& p, int kmax,
                                 double tol = 1e-10) {
    detail::check_table_k(kmax);
    if (!body.sphere_jet)
        throw std::domain_error("sphere route requires support-function jets");
    Exponents e = exponents_for(body.n, p);
    auto terms = detail::g_terms(body.n, p, kmax);
    const int n = body.n;
    auto fill = [&, e, n, kmax](const Vec3& u, double* out) {
        SphereJet jet = body.sphere_jet(u);
        if (!(jet.h > 0.0))
            throw std::domain_error("sphere integrand: origin must be interior");
        double s = jet.s[n - 1];  // product of the principal radii
        double s1p[detail::kMaxTableK + 1], sinv[detail::kMaxTableK + 1];
        s1p[0] = 1.0;
        sinv[0] = 1.0;
        double rs = s > 0.0 ? 1.0 / s : 0.0;
        for (int i = 1; i <= kmax; ++i) {
            s1p[i] = n >= 3 ? s1p[i - 1] * jet.s[1] : 0.0;
            sinv[i] = sinv[i - 1] * rs;
        }
        // G~_m: s_{n-1-j}^{i_j} / s_{n-1}^q; for n = 2 that is s^-e1, for
        // n = 3 it is s_1^e1 * s_0^e2 / s^(e1+e2).
        double gm[detail::kMaxTableK + 1];
        for (int m = 0; m <= kmax; ++m) {
            double g = 0.0;
            for (const detail::GTerm& t : terms[static_cast<std::size_t>(m)])
                g += n == 2 ? t.coeff * sinv[t.q]
                            : t.coeff * s1p[t.e1] * sinv[t.q];
            gm[m] = g;
        }
        double sp = powz(s, e.sphere_pow);
        double hd = std::pow(jet.h, e.beta);
        int pos = 0;
        for (int d = 0; d <= kmax; ++d) {
            double base = hd * sp;
            for (int m = 0; m + d <= kmax; ++m) out[pos++] = base * gm[m];
            hd /= jet.h;
        }
    };
    SteinerTable t = detail::table_from_estimate(
        body, kmax, integrate_sphere(body.n, detail::table_components(kmax), fill, tol));
    detail::add_range_flags(body, body.n, p, e, t.flags);
    return t;
}

// ---------------------------------------------------------------------------
// Named functionals

namespace detail {

inline FunctionalTag make_tag(const std::string& name, const Body& body, const PParam* p,
                              int m, int k) {
    FunctionalTag tag;
    tag.name = name;
    tag.n = body.n;
    if (p) tag.p = p->str();
    tag.m = m;
    tag.k = k;
    tag.body = body.spec;
    return tag;
}

}  // namespace detail

inline CoeffResult W_pmk(const Body& body, const PParam& p, int m, int k,
                         double tol = 1e-10) {
    if (m < 0 || k < 0 || m > k)
        throw std::domain_error("W_pmk: need 0 <= m <= k");
    SteinerTable t = boundary_table(body, p, k, tol);
    CoeffResult r;
    r.value = t.w(m, k);
    r.error_estimate = t.w_err(m, k);
    r.tag = detail::make_tag("W_pmk", body, &p, m, k);
    r.flags = t.flags;
    return r;
}

inline CoeffResult Z_pmk(const Body& body, const PParam& p, int m, int k,
                         double tol = 1e-10) {
    if (m < 0 || k < 0 || m > k)
        throw std::domain_error("Z_pmk: need 0 <= m <= k");
    SteinerTable t = sphere_table(body, p, k, tol);
    CoeffResult r;
    r.value = t.w(m, k);
    r.error_estimate = t.w_err(m, k);
    r.tag = detail::make_tag("Z_pmk", body, &p, m, k);
    r.flags = t.flags;
    return r;
}

namespace detail {

// V^p_k = sum_m gen_binom(beta, k - m) W^p_{m,k} assembled from a table.
inline CoeffResult assemble_vk(const SteinerTable& t, const Exponents& e, int k,
                               FunctionalTag tag) {
    CoeffResult r;
    r.tag = std::move(tag);
    r.flags = t.flags;
    for (int m = 0; m <= k; ++m) {
        double gb = gen_binom(e.beta_rat, k - m).to_double();
        if (gb == 0.0) continue;
        r.value += gb * t.w(m, k);
        r.error_estimate += std::fabs(gb) * t.w_err(m, k);
    }
    return r;
}

}  // namespace detail

inline std::vector<CoeffResult> V_pk_table(const Body& body, const PParam& p, int kmax,
                                           double tol = 1e-10) {
    Exponents e = exponents_for(body.n, p);
    SteinerTable t = boundary_table(body, p, kmax, tol);
    std::vector<CoeffResult> out;
    out.reserve(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k)
        out.push_back(detail::assemble_vk(t, e, k, detail::make_tag("V_pk", body, &p, -1, k)));
    return out;
}

inline std::vector<CoeffResult> U_pk_table(const Body& body, const PParam& p, int kmax,
                                           double tol = 1e-10) {
    Exponents e = exponents_for(body.n, p);
    SteinerTable t = sphere_table(body, p, kmax, tol);
    std::vector<CoeffResult> out;
    out.reserve(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k)
        out.push_back(detail::assemble_vk(t, e, k, detail::make_tag("U_pk", body, &p, -1, k)));
    return out;
}

inline CoeffResult V_pk(const Body& body, const PParam& p, int k, double tol = 1e-10) {
    if (k < 0) throw std::domain_error("V_pk: k must be >= 0");
    return V_pk_table(body, p, k, tol).back();
}

inline CoeffResult U_pk(const Body& body, const PParam& p, int k, double tol = 1e-10) {
    if (k < 0) throw std::domain_error("U_pk: k must be >= 0");
    return U_pk_table(body, p, k, tol).back();
}

// ---------------------------------------------------------------------------
// Affine surface areas

// Boundary form: integral of H_{n-1}^{p/(n+p)} <x,N>^{n(1-p)/(n+p)}; the
// infinite-parameter path integrates H_{n-1} <x,N>^{-n}.
inline CoeffResult asp_boundary(const Body& body, const PParam& p, double tol = 1e-10) {
    Exponents e = exponents_for(body.n, p);
    const int n = body.n;
    MultiEstimate est = integrate_boundary(
        body, 1,
        [&, e, n](const BoundaryJet& jet, double* out) {
            if (!(jet.support_dot > 0.0))
                throw std::domain_error("boundary integrand: origin must be interior");
            out[0] = powz(jet.H[n - 1], e.curv_pow) * std::pow(jet.support_dot, e.beta);
        },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("asp_boundary", body, &p, -1, -1);
    if (!est.converged) r.flags.push_back("unconverged");
    detail::add_range_flags(body, n, p, e, r.flags);
    return r;
}

// Sphere form: integral of s_{n-1}^{n/(n+p)} h^{n(1-p)/(n+p)}; infinite path
// integrates h^{-n}.
inline CoeffResult asp_sphere(const Body& body, const PParam& p, double tol = 1e-10) {
    if (!body.sphere_jet)
        throw std::domain_error("sphere route requires support-function jets");
    Exponents e = exponents_for(body.n, p);
    const int n = body.n;
    MultiEstimate est = integrate_sphere(
        body.n, 1,
        [&, e, n](const Vec3& u, double* out) {
            SphereJet jet = body.sphere_jet(u);
            if (!(jet.h > 0.0))
                throw std::domain_error("sphere integrand: origin must be interior");
            out[0] = powz(jet.s[n - 1], e.sphere_pow) * std::pow(jet.h, e.beta);
        },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("asp_sphere", body, &p, -1, -1);
    if (!est.converged) r.flags.push_back("unconverged");
    detail::add_range_flags(body, n, p, e, r.flags);
    return r;
}

// The p = -n member of the family is a supremum, not an integral:
// max over directions of s_{n-1}(u)^{1/2} h(u)^{(n+1)/2}.
inline CoeffResult as_minus_n(const Body& body) {
    if (!body.sphere_jet)
        throw std::domain_error("as_minus_n requires support-function jets");
    const int n = body.n;
    auto f = [&](const Vec3& u) {
        SphereJet jet = body.sphere_jet(u);
        return std::sqrt(std::max(jet.s[n - 1], 0.0)) *
               std::pow(jet.h, 0.5 * (n + 1));
    };
    double coarse = sphere_max(n, f);
    double fine = sphere_max(n, f, n == 2 ? 1024 : 320, 6);
    CoeffResult r;
    r.value = fine;
    r.error_estimate = std::fabs(fine - coarse);
    r.tag = detail::make_tag("as_minus_n", body, nullptr, -1, -1);
    return r;
}

// s-mixed affine surface area: H^{(s+p)/(n+p)} <x,N>^{(1-p)(n-s)/(n+p)}.
// The infinite path integrates H <x,N>^{s-n}.
inline CoeffResult mixed_asa(const Body& body, const PParam& p, const Rational& s,
                             double tol = 1e-10) {
    Exponents e = exponents_for(body.n, p);
    const int n = body.n;
    double hexp, texp;
    if (p.is_inf()) {
        hexp = 1.0;
        texp = (s - Rational(n)).to_double();
    } else {
        Rational np = Rational(n) + p.value();
        hexp = ((s + p.value()) / np).to_double();
        texp = ((Rational(1) - p.value()) * (Rational(n) - s) / np).to_double();
    }
    MultiEstimate est = integrate_boundary(
        body, 1,
        [&, hexp, texp, n](const BoundaryJet& jet, double* out) {
            if (!(jet.support_dot > 0.0))
                throw std::domain_error("boundary integrand: origin must be interior");
            out[0] = powz(jet.H[n - 1], hexp) * std::pow(jet.support_dot, texp);
        },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("mixed_asa(s=" + s.str() + ")", body, &p, -1, -1);
    if (!est.converged) r.flags.push_back("unconverged");
    e.curv_pow = hexp;  // divergence risk is governed by the actual H exponent
    detail::add_range_flags(body, n, p, e, r.flags);
    return r;
}

// ---------------------------------------------------------------------------
// Classical and dual quermassintegrals

// W_0 = vol_n (divergence-theorem form), W_i = (1/n) integral of H_{i-1}.
inline CoeffResult classical_querm(const Body& body, int i, double tol = 1e-10) {
    const int n = body.n;
    if (i < 0 || i > n) throw std::domain_error("classical_querm: need 0 <= i <= n");
    MultiEstimate est = integrate_boundary(
        body, 1,
        [&, i, n](const BoundaryJet& jet, double* out) {
            out[0] = (i == 0 ? jet.support_dot : jet.H[i - 1]) / n;
        },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("classical_querm", body, nullptr, -1, i);
    if (!est.converged) r.flags.push_back("unconverged");
    return r;
}

// Dual mixed volume (1/n) integral of rho_K^{n-i} rho_L^i over the sphere.
inline CoeffResult dual_mixed_volume(const Body& K, const Body& L, double i,
                                     double tol = 1e-10) {
    if (K.n != L.n) throw std::invalid_argument("dual_mixed_volume: dimension mismatch");
    if (!K.radial || !L.radial)
        throw std::domain_error("dual_mixed_volume: radial function unavailable");
    const int n = K.n;
    MultiEstimate est = integrate_sphere(
        n, 1,
        [&, i, n](const Vec3& u, double* out) {
            out[0] = std::pow(K.radial(u), n - i) * std::pow(L.radial(u), i) / n;
        },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("dual_mixed_volume(i=" + fmt17(i) + ")", K, nullptr, -1, -1);
    r.tag.body += " | " + L.spec;
    if (!est.converged) r.flags.push_back("unconverged");
    return r;
}

// Dual quermassintegral W~_i = (1/n) integral of rho^{n-i}; real order i.
inline CoeffResult dual_querm(const Body& body, double i, double tol = 1e-10) {
    if (!body.radial) throw std::domain_error("dual_querm: radial function unavailable");
    const int n = body.n;
    MultiEstimate est = integrate_sphere(
        n, 1,
        [&, i, n](const Vec3& u, double* out) { out[0] = std::pow(body.radial(u), n - i) / n; },
        tol);
    CoeffResult r;
    r.value = est.values[0];
    r.error_estimate = est.errors[0];
    r.tag = detail::make_tag("dual_querm(i=" + fmt17(i) + ")", body, nullptr, -1, -1);
    if (!est.converged) r.flags.push_back("unconverged");
    return r;
}

// ---------------------------------------------------------------------------
// Series expansion of the parallel-body affine surface area

struct SeriesResult {
    PParam p;
    std::vector<double> coefficients;  // V^p_k for k = 0..k_max
    std::vector<double> errors;
    int k_max = 0;
    enum class Truncation { converged, finite_sum, max_k_reached } truncation =
        Truncation::max_k_reached;
    double t_validity = 0.0;  // min over directions of the support function
    std::vector<std::string> flags;
};

inline const char* truncation_name(SeriesResult::Truncation t) {
    switch (t) {
        case SeriesResult::Truncation::converged: return "converged";
        case SeriesResult::Truncation::finite_sum: return "finite-sum";
        default: return "max-k-reached";
    }
}

// If p = -n(l-1)/l for a positive integer l, the expansion terminates at
// degree n(2l-1); returns l, or 0 if p is not of that form.
inline int finite_sum_order(int n, const PParam& p) {
    if (p.is_inf()) return 0;
    Rational np = Rational(n) + p.value();
    if (np.sign() <= 0) return 0;
    Rational l = Rational(n) / np;
    if (!l.is_integer() || l < Rational(1)) return 0;
    return static_cast<int>(l.to_double());
}

inline SeriesResult series_asp(const Body& body, const PParam& p, int k_max = 40,
                               double tol = 1e-9) {
    if (k_max < 0 || k_max > detail::kMaxTableK)
        throw std::domain_error("series_asp: k_max out of supported range");
    SeriesResult res;
    res.p = p;
    res.t_validity = support_min(body);

    int l = finite_sum_order(body.n, p);
    int k_hi = l > 0 ? body.n * (2 * l - 1) : -1;
    int k_eff = l > 0 ? std::min(k_max, k_hi) : k_max;

    std::vector<CoeffResult> table = V_pk_table(body, p, k_eff, tol);
    for (const CoeffResult& c : table) {
        res.coefficients.push_back(c.value);
        res.errors.push_back(c.error_estimate);
        for (const std::string& f : c.flags)
            if (std::find(res.flags.begin(), res.flags.end(), f) == res.flags.end())
                res.flags.push_back(f);
    }
    res.k_max = k_eff;

    if (l > 0) {
        res.truncation = SeriesResult::Truncation::finite_sum;
        return res;
    }

    // Infinite series: stop after three consecutive terms negligible against
    // the partial sum at the reference point t_ref = t_validity / 2.
    double t_ref = 0.5 * res.t_validity;
    double partial = 0.0, tpow = 1.0;
    int consecutive = 0;
    for (int k = 0; k <= k_eff; ++k) {
        double term = res.coefficients[static_cast<std::size_t>(k)] * tpow;
        partial += term;
        tpow *= t_ref;
        if (std::fabs(term) < tol * std::fabs(partial)) {
            if (++consecutive == 3) {
                res.truncation = SeriesResult::Truncation::converged;
                res.k_max = k;
                res.coefficients.resize(static_cast<std::size_t>(k) + 1);
                res.errors.resize(static_cast<std::size_t>(k) + 1);
                return res;
            }
        } else {
            consecutive = 0;
        }
    }
    res.truncation = SeriesResult::Truncation::max_k_reached;
    res.flags.push_back("max-k-reached");
    return res;
}

// Evaluate the series at a point t (plain Horner on the stored coefficients).
inline double series_eval(const SeriesResult& s, double t) {
    double acc = 0.0;
    for (std::size_t k = s.coefficients.size(); k-- > 0;)
        acc = acc * t + s.coefficients[k];
    return acc;
}

// Direct evaluation of the parallel-body affine surface area: build K + tB
// and integrate over its boundary regions.  For smooth bodies those regions
// are normal-parametrized, so this is exactly the sphere-form integral of
// (h+t) and the shifted radii; bodies with flat pieces are handled
// region-by-region with the same convention as every other boundary integral.
inline CoeffResult direct_asp_parallel(const Body& body, const PParam& p, double t,
                                       double tol = 1e-10) {
    if (t < 0.0) throw std::domain_error("direct_asp_parallel: t must be >= 0");
    Body parallel = minkowski_add_ball(body, t);
    CoeffResult r = asp_boundary(parallel, p, tol);
    r.tag.name = "direct_asp_parallel(t=" + fmt17(t) + ")";
    r.tag.body = body.spec;
    return r;
}

}  // namespace lpsteiner
