#include "sharpineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "sharpineq/constants.hpp"

namespace sharpineq {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct PanelResult {
    double value;   // K15 estimate
    double error;   // QUADPACK-style scaled estimate
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kXgk[i];
        double y;
        if (i == 7) {
            y = f(c);
            fv[7] = y;
            resk += kWgk[7] * y;
        } else {
            const double y1 = f(c - dx);
            const double y2 = f(c + dx);
            fv[i] = y1;
            fv[14 - i] = y2;
            y = y1 + y2;
            resk += kWgk[i] * y;
        }
        if (i % 2 == 1) resg += kWg[i / 2] * y;  // odd Kronrod indices are Gauss nodes
    }
    for (int i = 0; i < 15; ++i) {
        if (!std::isfinite(fv[i]))
            throw NonFinite("integrand returned a non-finite value inside a panel");
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    resasc *= std::abs(h);
    double err = std::abs(resk - resg) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {resk * h, err};
}

struct Interval {
    double a, b, value, error;
    long order;  // insertion counter, deterministic tie-break
};

struct WorstFirst {
    bool operator()(const Interval& x, const Interval& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.order > y.order;
    }
};

IntegralEstimate adaptive(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec) {
    IntegralEstimate out;
    if (lo == hi) return out;
    std::priority_queue<Interval, std::vector<Interval>, WorstFirst> heap;
    long counter = 0;
    PanelResult first = gk15(f, lo, hi);
    heap.push({lo, hi, first.value, first.error, counter++});
    double total = first.value;
    double total_err = first.error;
    int panels = 1;
    while (total_err > std::max(spec.rel_tol * std::abs(total), spec.abs_tol)) {
        if (panels >= spec.max_subdivisions)
            throw ToleranceNotMet("adaptive quadrature exhausted max_subdivisions");
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution
            if (worst.error > 0.5 * std::max(spec.rel_tol * std::abs(total), spec.abs_tol))
                throw ToleranceNotMet(
                    "panel at floating-point resolution still dominates the error "
                    "(likely a non-integrable singularity)");
            heap.push({worst.a, worst.b, worst.value, 0.0, counter++});
            total_err -= worst.error;
            continue;
        }
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error, counter++});
        heap.push({mid, worst.b, right.value, right.error, counter++});
        ++panels;
    }
    out.value = total;
    out.error = total_err;
    out.panels = panels;
    return out;
}

}  // namespace

IntegralEstimate integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec) {
    if (!(lo <= hi)) throw DomainError("integrate: lo must satisfy lo <= hi");
    if (lo == hi) return {};
    if (!spec.singular_origin) return adaptive(f, lo, hi, spec);
    // r = lo + (hi-lo) e^t maps t in (-inf, 0] onto (lo, hi]. The truncation
    // depth is limited by the floating-point resolution around lo; the
    // remaining [lo, lo+delta] sliver is added back by power-law
    // extrapolation from two probe points.
    const double len = hi - lo;
    const double delta = std::max(1e-120, 1e-12 * std::abs(lo) / len);
    const double t0 = std::log(delta);
    auto sub = [&](double t) {
        const double e = std::exp(t);
        return f(lo + len * e) * len * e;
    };
    IntegralEstimate est = adaptive(sub, t0, 0.0, spec);
    const double f1 = f(lo + delta * len);
    const double f2 = f(lo + 2.0 * delta * len);
    if (std::isfinite(f1) && std::isfinite(f2) && f1 != 0.0 && f2 != 0.0 &&
        std::signbit(f1) == std::signbit(f2)) {
        const double sigma = std::log2(std::abs(f2) / std::abs(f1));
        if (sigma > -0.999)
            est.value += f1 * (delta * len) / (1.0 + sigma);
    }
    return est;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

McEstimate monte_carlo_weighted(const std::function<double(double)>& pointwise, int n,
                                const McSpec& spec) {
    if (n < 1) throw DomainError("monte_carlo_weighted: n must satisfy n >= 1");
    if (spec.samples < 1) throw DomainError("monte_carlo_weighted: samples must be positive");
    if (!(spec.radius_cap > 0.0)) throw DomainError("monte_carlo_weighted: radius_cap must be positive");

    // volume of the n-ball of radius radius_cap
    const double volume = unit_sphere_area(n) / n * std::pow(spec.radius_cap, n);

    // For a radial integrand only the sample radius matters; the radius of a
    // uniform ball point has CDF (r/cap)^n, sampled by inversion. Substream
    // partials are combined in fixed order so the estimate is deterministic
    // regardless of execution schedule.
    constexpr int kSubstreams = 64;
    const std::int64_t total = spec.samples;
    double sum = 0.0, sumsq = 0.0;
    for (int j = 0; j < kSubstreams; ++j) {
        const std::int64_t begin = total * j / kSubstreams;
        const std::int64_t end = total * (j + 1) / kSubstreams;
        std::mt19937_64 rng(splitmix64(spec.seed ^ (0x5851f42d4c957f2dULL * (j + 1))));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double s = 0.0, s2 = 0.0;
        for (std::int64_t i = begin; i < end; ++i) {
            double u = unif(rng);
            if (u <= 0.0) u = std::numeric_limits<double>::min();
            const double r = spec.radius_cap * std::pow(u, 1.0 / n);
            const double w = pointwise(r);
            s += w;
            s2 += w * w;
        }
        sum += s;
        sumsq += s2;
    }
    const double inv_n = 1.0 / static_cast<double>(total);
    const double mean = sum * inv_n;
    McEstimate out;
    out.value = volume * mean;
    if (total > 1) {
        double var = (sumsq - total * mean * mean) / (total - 1.0);
        if (var < 0.0) var = 0.0;
        out.std_error = volume * std::sqrt(var * inv_n);
    }
    return out;
}

}  // namespace sharpineq
