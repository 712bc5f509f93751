#pragma once

// Deterministic adaptive quadrature over body boundaries and direction
// spheres.
//
// Every integral is a tensor Gauss-Legendre rule over each region's parameter
// box (or a Gauss-Legendre x midpoint product rule on the sphere), evaluated
// at doubling node counts until two successive levels agree to the requested
// tolerance.  Node contributions are accumulated in fixed 2048-node chunks
// with Kahan compensation, and chunks are combined in index order, so results
// are bit-identical regardless of how many worker threads evaluate the nodes
// (LPSTEINER_THREADS overrides the default of one thread per hardware core).

#include "lpsteiner/body.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace lpsteiner {

struct GLRule {
    std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Gauss-Legendre nodes by Newton iteration on the Legendre polynomial,
// cached per node count.
inline const GLRule& gauss_legendre(int count) {
    static std::map<int, GLRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(count);
    if (it != cache.end()) return it->second;
    GLRule rule;
    rule.x.resize(static_cast<std::size_t>(count));
    rule.w.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < (count + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (count + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence up to degree `count`
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = count * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.x[static_cast<std::size_t>(i)] = -x;
        rule.x[static_cast<std::size_t>(count - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.w[static_cast<std::size_t>(i)] = w;
        rule.w[static_cast<std::size_t>(count - 1 - i)] = w;
    }
    return cache.emplace(count, std::move(rule)).first->second;
}

inline int thread_count() {
    if (const char* env = std::getenv("LPSTEINER_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace detail {

// Accumulate eval(i, vals) for i in [0, total) into out[0..ncomp).  Fixed
// chunking plus in-order combination makes the result independent of the
// number of threads.
template <typename Eval>
void chunked_accumulate(std::size_t total, int ncomp, const Eval& eval, double* out) {
    constexpr std::size_t kChunk = 2048;
    const std::size_t nchunks = total == 0 ? 0 : (total - 1) / kChunk + 1;
    const std::size_t nc = static_cast<std::size_t>(ncomp);
    std::vector<double> partial(nchunks * nc, 0.0);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        std::vector<double> sum(nc), comp(nc), vals(nc);
        try {
            while (true) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                std::fill(sum.begin(), sum.end(), 0.0);
                std::fill(comp.begin(), comp.end(), 0.0);
                std::size_t i1 = std::min(total, (c + 1) * kChunk);
                for (std::size_t i = c * kChunk; i < i1; ++i) {
                    eval(i, vals.data());
                    for (std::size_t k = 0; k < nc; ++k) {
                        double y = vals[k] - comp[k];
                        double t = sum[k] + y;
                        comp[k] = (t - sum[k]) - y;
                        sum[k] = t;
                    }
                }
                std::copy(sum.begin(), sum.end(), partial.begin() + static_cast<long>(c * nc));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(nchunks);  // drain remaining work
        }
    };

    int nthreads = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), nchunks);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> sum(nc, 0.0), comp(nc, 0.0);
    for (std::size_t c = 0; c < nchunks; ++c)
        for (std::size_t k = 0; k < nc; ++k) {
            double y = partial[c * nc + k] - comp[k];
            double t = sum[k] + y;
            comp[k] = (t - sum[k]) - y;
            sum[k] = t;
        }
    std::copy(sum.begin(), sum.end(), out);
}

}  // namespace detail

struct MultiEstimate {
    std::vector<double> values;
    std::vector<double> errors;  // last inter-level difference, per component
    bool converged = false;
    int level = 0;  // finest level used by any region
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int level = 0;
};

namespace detail {

// One fixed-level pass over a region.  G: void(const BoundaryJet&, double*).
template <typename G>
void region_pass(const Region& reg, int level, int ncomp, const G& g, double* out) {
    const std::size_t nc = static_cast<std::size_t>(ncomp);
    int npts = 1 << level;
    const GLRule& ra = gauss_legendre(npts);
    double ja = 0.5 * (reg.hi[0] - reg.lo[0]);
    if (reg.pdim == 1) {
        chunked_accumulate(
            static_cast<std::size_t>(npts), ncomp,
            [&](std::size_t i, double* vals) {
                double a = reg.lo[0] + (ra.x[i] + 1.0) * ja;
                double weight = ra.w[i] * ja * reg.density(a, 0.0);
                BoundaryJet jet = reg.jet(a, 0.0);
                g(jet, vals);
                for (std::size_t k = 0; k < nc; ++k) vals[k] *= weight;
            },
            out);
        return;
    }
    double jb = 0.5 * (reg.hi[1] - reg.lo[1]);
    std::size_t nb = static_cast<std::size_t>(npts);
    chunked_accumulate(
        static_cast<std::size_t>(npts) * nb, ncomp,
        [&](std::size_t i, double* vals) {
            std::size_t ia = i / nb, ib = i % nb;
            double a = reg.lo[0] + (ra.x[ia] + 1.0) * ja;
            double b = reg.lo[1] + (ra.x[ib] + 1.0) * jb;
            double weight = ra.w[ia] * ra.w[ib] * ja * jb * reg.density(a, b);
            BoundaryJet jet = reg.jet(a, b);
            g(jet, vals);
            for (std::size_t k = 0; k < nc; ++k) vals[k] *= weight;
        },
        out);
}

constexpr int kMinLevel = 4;

inline int max_level_for(int pdim) { return pdim == 1 ? 14 : 10; }

// Level-doubling driver shared by region and sphere integration.  pass(level,
// out) fills ncomp values.
template <typename Pass>
MultiEstimate adapt_levels(int ncomp, int max_level, const Pass& pass, double tol) {
    const std::size_t nc = static_cast<std::size_t>(ncomp);
    MultiEstimate est;
    est.values.assign(nc, 0.0);
    est.errors.assign(nc, std::numeric_limits<double>::infinity());
    std::vector<double> prev(nc, 0.0), cur(nc, 0.0);
    pass(kMinLevel, prev.data());
    for (int level = kMinLevel + 1; level <= max_level; ++level) {
        pass(level, cur.data());
        bool ok = true;
        for (std::size_t k = 0; k < nc; ++k) {
            est.errors[k] = std::fabs(cur[k] - prev[k]);
            if (est.errors[k] > tol * std::max(1.0, std::fabs(cur[k]))) ok = false;
        }
        prev = cur;
        est.level = level;
        if (ok) {
            est.converged = true;
            break;
        }
    }
    est.values = prev;
    return est;
}

}  // namespace detail

// Integrate a vector integrand over the whole boundary: per-region adaptive
// refinement, region results and error estimates summed in region order.
template <typename G>
MultiEstimate integrate_boundary(const Body& body, int ncomp, const G& g,
                                 double tol = 1e-10) {
    const std::size_t nc = static_cast<std::size_t>(ncomp);
    MultiEstimate total;
    total.values.assign(nc, 0.0);
    total.errors.assign(nc, 0.0);
    total.converged = true;
    for (const Region& reg : body.regions) {
        MultiEstimate part = detail::adapt_levels(
            ncomp, detail::max_level_for(reg.pdim),
            [&](int level, double* out) { detail::region_pass(reg, level, ncomp, g, out); },
            tol);
        for (std::size_t k = 0; k < nc; ++k) {
            total.values[k] += part.values[k];
            total.errors[k] += part.errors[k];
        }
        total.converged = total.converged && part.converged;
        total.level = std::max(total.level, part.level);
    }
    return total;
}

// Fixed-level variant (divergence sweeps): no convergence judgement.
template <typename G>
std::vector<double> integrate_boundary_fixed(const Body& body, int ncomp, const G& g,
                                             int level) {
    std::vector<double> total(static_cast<std::size_t>(ncomp), 0.0);
    std::vector<double> part(static_cast<std::size_t>(ncomp), 0.0);
    for (const Region& reg : body.regions) {
        detail::region_pass(reg, level, ncomp, g, part.data());
        for (std::size_t k = 0; k < part.size(); ++k) total[k] += part[k];
    }
    return total;
}

namespace detail {

// One fixed-level pass over the direction sphere.  G: void(const Vec3&, double*).
template <typename G>
void sphere_pass(int n, int level, int ncomp, const G& g, double* out) {
    const std::size_t nc = static_cast<std::size_t>(ncomp);
    if (n == 2) {
        std::size_t npts = std::size_t{1} << level;
        double w = 2.0 * M_PI / static_cast<double>(npts);
        chunked_accumulate(
            npts, ncomp,
            [&](std::size_t i, double* vals) {
                double th = (static_cast<double>(i) + 0.5) * w;
                Vec3 u = {std::cos(th), std::sin(th), 0.0};
                g(u, vals);
                for (std::size_t k = 0; k < nc; ++k) vals[k] *= w;
            },
            out);
        return;
    }
    // n = 3: Gauss-Legendre in z = cos(theta), midpoints in the azimuth.
    int nz = 1 << level;
    std::size_t nphi = std::size_t{1} << (level + 1);
    const GLRule& rz = gauss_legendre(nz);
    double wphi = 2.0 * M_PI / static_cast<double>(nphi);
    chunked_accumulate(
        static_cast<std::size_t>(nz) * nphi, ncomp,
        [&](std::size_t i, double* vals) {
            std::size_t iz = i / nphi, ip = i % nphi;
            double z = rz.x[iz];
            double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            double ph = (static_cast<double>(ip) + 0.5) * wphi;
            Vec3 u = {s * std::cos(ph), s * std::sin(ph), z};
            double weight = rz.w[iz] * wphi;
            g(u, vals);
            for (std::size_t k = 0; k < nc; ++k) vals[k] *= weight;
        },
        out);
}

}  // namespace detail

// Integrate a vector integrand over the unit direction sphere.
template <typename G>
MultiEstimate integrate_sphere(int n, int ncomp, const G& g, double tol = 1e-10) {
    int max_level = n == 2 ? 14 : 10;
    return detail::adapt_levels(
        ncomp, max_level,
        [&](int level, double* out) { detail::sphere_pass(n, level, ncomp, g, out); }, tol);
}

// Scalar conveniences.
template <typename G>
IntegralEstimate integrate_boundary_scalar(const Body& body, const G& g, double tol = 1e-10) {
    MultiEstimate m = integrate_boundary(
        body, 1, [&](const BoundaryJet& j, double* out) { out[0] = g(j); }, tol);
    return {m.values[0], m.errors[0], m.converged, m.level};
}

template <typename G>
IntegralEstimate integrate_sphere_scalar(int n, const G& g, double tol = 1e-10) {
    MultiEstimate m = integrate_sphere(
        n, 1, [&](const Vec3& u, double* out) { out[0] = g(u); }, tol);
    return {m.values[0], m.errors[0], m.converged, m.level};
}

// Total surface measure of the boundary (sum of region measures).
inline IntegralEstimate boundary_measure(const Body& body, double tol = 1e-10) {
    return integrate_boundary_scalar(body, [](const BoundaryJet&) { return 1.0; }, tol);
}

}  // namespace lpsteiner
