#ifndef DDS_JACOBI_HPP
#define DDS_JACOBI_HPP

#include <complex>

#include "dds/error.hpp"

namespace dds {

using cplx = std::complex<double>;

namespace detail {

/// Generalized binomial coefficient C(a, m) for complex a, integer m >= 0.
inline cplx gbinom(cplx a, int m) {
    cplx out = 1.0;
    for (int j = 1; j <= m; ++j) out *= (a - cplx(m - j)) / cplx(j);
    return out;
}

/// Finite-sum form, valid for any complex parameters:
///   P_n^{(a,b)}(x) = sum_m C(n+a, m) C(n+b, n-m) ((x-1)/2)^{n-m} ((x+1)/2)^m
inline cplx jacobi_sum(int n, cplx a, cplx b, cplx x) {
    cplx xm = 0.5 * (x - 1.0), xp = 0.5 * (x + 1.0);
    cplx acc = 0.0;
    for (int m = 0; m <= n; ++m) {
        cplx t = gbinom(a + cplx(n), m) * gbinom(b + cplx(n), n - m);
        cplx p = 1.0;
        for (int j = 0; j < n - m; ++j) p *= xm;
        for (int j = 0; j < m; ++j) p *= xp;
        acc += t * p;
    }
    return acc;
}

}  // namespace detail

/// Jacobi polynomial with complex degree parameters and argument, by the
/// three-term recurrence in n; falls back to the finite sum when a recurrence
/// denominator gets small (a+b near negative integers).
inline cplx jacobi(int n, cplx a, cplx b, cplx x) {
    if (n < 0) throw Error(ErrorCode::OutOfLadder, "jacobi: n must be >= 0");
    if (n == 0) return 1.0;
    cplx p0 = 1.0;
    cplx p1 = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
    if (n == 1) return p1;
    for (int m = 2; m <= n; ++m) {
        cplx mm(static_cast<double>(m));
        cplx c1 = 2.0 * mm * (mm + a + b) * (2.0 * mm + a + b - 2.0);
        if (std::abs(c1) < 1e-10) return detail::jacobi_sum(n, a, b, x);
        cplx c2 = (2.0 * mm + a + b - 1.0) * (a * a - b * b);
        cplx c3 = (2.0 * mm + a + b - 2.0) * (2.0 * mm + a + b - 1.0) * (2.0 * mm + a + b);
        cplx c4 = 2.0 * (mm + a - 1.0) * (mm + b - 1.0) * (2.0 * mm + a + b);
        cplx p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// d/dx P_n^{(a,b)}(x) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(x)
inline cplx jacobi_derivative(int n, cplx a, cplx b, cplx x) {
    if (n <= 0) return 0.0;
    return 0.5 * (cplx(n) + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x);
}

}  // namespace dds

#endif
