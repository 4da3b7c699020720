#pragma once

#include <cmath>

namespace fkpp {

/// Adaptive Simpson on [a, b] with absolute tolerance tol.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 28) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    struct Impl {
        F& f;
        double operator()(double a, double m, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return (*this)(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   (*this)(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    } impl{f};
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl(a, m, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace fkpp
