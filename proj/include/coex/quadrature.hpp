#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "coex/errors.hpp"

namespace coex::quad {

struct Panel {
    double value;
    double error;
};

// 7-point Gauss / 15-point Kronrod pair on [a, b].
template <class Fn>
Panel gk15(const Fn& f, double a, double b) {
    // node, Gauss weight, Kronrod weight
    static const double nw[8][3] = {
        {0.000000000000000, 0.417959183673469, 0.209482141084728},
        {0.405845151377397, 0.381830050505119, 0.190350578064785},
        {0.741531185599394, 0.279705391489277, 0.140653259715525},
        {0.949107912342759, 0.129484966168870, 0.063092092629979},
        {0.207784955007898, 0.0, 0.204432940075298},
        {0.586087235467691, 0.0, 0.169004726639267},
        {0.864864423359769, 0.0, 0.104790010322250},
        {0.991455371120813, 0.0, 0.022935322010529},
    };
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g = nw[0][1] * y0;
    double k = nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * nw[i][0];
        const double y = f(mid + dx) + f(mid - dx);
        g += nw[i][1] * y;
        k += nw[i][2] * y;
    }
    g *= half;
    k *= half;
    double err = 200.0 * std::fabs(k - g);
    err *= std::sqrt(err > 0 ? err : 0.0);
    return {k, err};
}

// Adaptive bisection to a relative tolerance.  The worklist is bounded; the
// integrands here are smooth positive densities, so the bound is generous.
template <class Fn>
double integrate_adaptive(const Fn& f, double a, double b, double rel_tol,
                          double abs_tol = 0.0) {
    if (!(b > a)) return 0.0;
    struct Interval {
        double a, b;
    };
    std::vector<Interval> work{{a, b}};
    work.reserve(64);
    double sum = 0.0;
    int panels = 0;
    while (!work.empty()) {
        const Interval iv = work.back();
        work.pop_back();
        const Panel p = gk15(f, iv.a, iv.b);
        if (p.error <= rel_tol * std::fabs(p.value) || p.error <= abs_tol ||
            (iv.b - iv.a) < 1e-14 * (b - a)) {
            sum += p.value;
            continue;
        }
        if (++panels > 4000) throw DomainError("integrate_adaptive: no convergence");
        const double mid = 0.5 * (iv.a + iv.b);
        work.push_back({iv.a, mid});
        work.push_back({mid, iv.b});
    }
    return sum;
}

// T(x0, alpha) = int_{x0}^inf dx / (1 + x^{alpha/2}),  alpha > 2.
//
// The substitution x = 1/t followed by t = y^{2/(alpha-2)} removes both the
// infinite limit and the endpoint singularity, leaving a smooth bounded
// integrand p / (1 + y^{alpha/(alpha-2)}) on [0, x0^{-1/p}].
inline double tail_integral(double x0, double alpha) {
    if (alpha <= 2.0) throw DomainError("tail_integral: requires alpha > 2");
    if (x0 < 0.0) throw ParameterError("tail_integral: x0 must be >= 0");
    if (x0 == 0.0) {
        const double s = 2.0 * 3.14159265358979323846 / alpha;
        return s / std::sin(s);
    }
    const double p = 2.0 / (alpha - 2.0);
    const double q = alpha / (alpha - 2.0);
    const double ymax = std::pow(1.0 / x0, 1.0 / p);
    return integrate_adaptive(
        [p, q](double y) { return p / (1.0 + std::pow(y, q)); }, 0.0, ymax, 1e-10);
}

// Smallest u with lin*u + pow_coef*u^{power} >= target (all coefficients >= 0,
// at least one positive).  Used to truncate exponentially decaying integrands.
inline double decay_cutoff(double lin, double pow_coef, double power, double target) {
    auto g = [&](double u) { return lin * u + pow_coef * std::pow(u, power); };
    double hi = 1.0;
    while (g(hi) < target) {
        hi *= 2.0;
        if (hi > 1e300) throw DomainError("decay_cutoff: integrand does not decay");
    }
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace coex::quad
