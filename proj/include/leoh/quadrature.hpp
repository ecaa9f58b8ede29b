/*
 *    Copyright 2026 The leoharvest Authors
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *        http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

#pragma once

// Adaptive 1D quadrature used by every closed-form metric.
//
// Panels use the 21-point Gauss-Kronrod rule with its embedded 10-point Gauss
// rule for the error estimate. The driver bisects the panel with the largest
// error estimate until the summed estimate meets max(abs_tol, rel_tol * |I|).

#include "leoh/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace leoh {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    /// Semi-infinite integrals stop where the integrand's upper bound drops below this.
    double tail_cutoff = 1e-12;

    /// Throws DomainError unless every field is positive.
    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1 || !(tail_cutoff > 0.0)) {
            throw DomainError("quadrature tolerances must be positive and max_subdivisions >= 1");
        }
    }

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

namespace detail {

struct Panel {
    double lo;
    double hi;
    double value;
    double error;

    friend bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }
};

template <class F>
Panel gauss_kronrod_panel(F& f, double lo, double hi) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double kronrod = f(center) * wk[0];
    double gauss = 0.0;
    // Odd Kronrod abscissae are the Gauss nodes.
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double pair = f(center + half * x[i]) + f(center - half * x[i]);
        kronrod += pair * wk[i];
        if (i % 2 == 1) {
            gauss += pair * wg[i / 2];
        }
    }
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod);
    return {lo, hi, kronrod * half, std::max(std::abs(kronrod - gauss), roundoff) * std::abs(half)};
}

} // namespace detail

/// Globally adaptive integral of f over [a, b]. Throws QuadratureFailure when the
/// tolerance is not met within quad.max_subdivisions panels or the sum is not finite.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& quad) {
    if (a == b) {
        return {};
    }
    if (b < a) {
        QuadratureResult r = integrate_adaptive(f, b, a, quad);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<detail::Panel> panels;
    panels.push(detail::gauss_kronrod_panel(f, a, b));
    double total = panels.top().value;
    double error = panels.top().error;

    auto tolerance = [&] { return std::max(quad.abs_tol, quad.rel_tol * std::abs(total)); };

    while (error > tolerance()) {
        if (!std::isfinite(total) || static_cast<int>(panels.size()) >= quad.max_subdivisions) {
            const detail::Panel& worst = panels.top();
            throw QuadratureFailure(worst.lo, worst.hi, error, tolerance());
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw QuadratureFailure(worst.lo, worst.hi, error, tolerance());
        }
        const detail::Panel left = detail::gauss_kronrod_panel(f, worst.lo, mid);
        const detail::Panel right = detail::gauss_kronrod_panel(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    if (!std::isfinite(total)) {
        throw QuadratureFailure(a, b, error, tolerance());
    }

    // Re-add from scratch so incremental updates leave no drift.
    QuadratureResult result;
    result.panels = static_cast<int>(panels.size());
    double value = 0.0;
    double err = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    result.value = value;
    result.error = err;
    return result;
}

template <class F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& quad) {
    return integrate_adaptive(f, a, b, quad).value;
}

/// Integral over [a, b] of an integrand that may behave like (b - x)^(-1/2) at b.
///
/// Substitutes x = a + (b - a) sin(t), t in [0, pi/2], which cancels the singularity
/// against the Jacobian. f is called as f(x, b - x); the second argument is
/// computed as (b - a) cos^2(t) / (1 + sin(t)) and keeps full relative precision
/// next to b, which a plain b - x would not.
template <class F>
double integrate_sqrt_endpoint(F&& f, double a, double b, const QuadratureSpec& quad) {
    const double width = b - a;
    if (width == 0.0) {
        return 0.0;
    }
    auto substituted = [&](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        const double x = a + width * s;
        const double gap = width * c * c / (1.0 + s);
        return f(x, gap) * width * c;
    };
    return integrate_1d(substituted, 0.0, std::numbers::pi / 2.0, quad);
}

/// Smallest x >= a (to bisection accuracy) with bound(x) < quad.tail_cutoff, for
/// a non-increasing bound. Throws QuadratureFailure if none is found.
template <class Bound>
double tail_truncation_point(Bound&& bound, double a, const QuadratureSpec& quad) {
    if (bound(a) < quad.tail_cutoff) {
        return a;
    }
    double step = 1.0;
    int doublings = 0;
    while (bound(a + step) >= quad.tail_cutoff) {
        step *= 2.0;
        if (++doublings > 1000 || !std::isfinite(step)) {
            throw QuadratureFailure(a, a + step, bound(a + step), quad.tail_cutoff);
        }
    }
    const double lo = doublings == 0 ? a : a + 0.5 * step;
    const double hi = a + step;
    auto excess = [&](double x) { return bound(x) - quad.tail_cutoff; };
    // Bisection to ~1e-10 of the bracket keeps the truncation point on the safe side.
    auto tol = [](double l, double h) { return (h - l) <= 1e-10 * std::max(1.0, std::abs(h)); };
    std::uintmax_t iterations = 200;
    const auto bracket = boost::math::tools::bisect(excess, lo, hi, tol, iterations);
    return bracket.second;
}

/// Integral of f over [a, inf), truncated where `bound` (a non-increasing upper
/// bound on |f|) falls below quad.tail_cutoff.
template <class F, class Bound>
double integrate_semi_infinite(F&& f, double a, const QuadratureSpec& quad, Bound&& bound) {
    const double b = tail_truncation_point(bound, a, quad);
    return integrate_1d(f, a, b, quad);
}

/// Same as above for a non-increasing non-negative f, which serves as its own bound.
template <class F>
double integrate_semi_infinite(F&& f, double a, const QuadratureSpec& quad) {
    return integrate_semi_infinite(f, a, quad, f);
}

} // namespace leoh
