#pragma once

// Adaptive Simpson quadrature with an absolute-error target. The classic
// Richardson estimate |S(left)+S(right)-S(whole)|/15 drives refinement; the
// local tolerance halves on each split so accepted-panel errors sum to at
// most the requested budget.
//
// Two guards against the known failure modes of the plain scheme:
//   - a forced minimum subdivision depth, since a coarse estimate can agree
//     with its refinement by accident (e.g. piecewise-polynomial integrands
//     whose pieces Simpson integrates exactly);
//   - an ulp-width floor, since at a jump discontinuity the panel error and
//     the halved tolerance shrink at the same rate and the straddling panel
//     would otherwise recurse until the depth cap. A panel too thin to hold
//     a representable midpoint is accepted as is; its residual error is at
//     jump-height * ulp scale.
//
// Panels that still hit the depth limit contribute their best estimate and
// mark the result as not converged instead of aborting, so callers can
// report the failure alongside the value.

#include <cmath>
#include <stdexcept>

namespace equimax {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

namespace detail {

inline constexpr int kForcedSplitDepth = 6;

template <typename F>
void adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth, int force, QuadratureResult& out) {
    const double m = 0.5 * (a + b);
    if (!(a < m && m < b)) {  // no representable midpoint left
        out.value += whole;
        return;
    }
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (force <= 0 && std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.error_estimate += std::abs(delta) / 15.0;
        return;
    }
    if (depth <= 0) {
        out.value += left + right;
        out.error_estimate += std::abs(delta);
        out.converged = false;
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, force - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, force - 1, out);
}

}  // namespace detail

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double tol, int max_depth = 72) {
    if (!(a <= b)) {
        throw std::domain_error("integrate: requires a <= b");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("integrate: tolerance must be positive");
    }
    QuadratureResult out;
    if (a == b) {
        return out;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, max_depth,
                             detail::kForcedSplitDepth, out);
    return out;
}

}  // namespace equimax
