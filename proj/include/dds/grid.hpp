#ifndef DDS_GRID_HPP
#define DDS_GRID_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>

#include "dds/error.hpp"

namespace dds {

using cplx = std::complex<double>;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Uniform 1-D grid for the Dirichlet boxes used by the oracle and the
/// quadrature helpers. n_points counts interior points; the walls sit at
/// z_min and z_max.
struct GridSpec {
    double z_min = -10.0;
    double z_max = 10.0;
    int n_points = 1500;
    double center = 0.0;  // PT reflection center, 0.5*ln(q) for q > 0

    double h() const { return (z_max - z_min) / (n_points + 1); }

    void validate(bool oracle_use = true) const {
        if (!(z_max > z_min))
            throw Error(ErrorCode::InvalidGrid, "z_max must exceed z_min");
        if (oracle_use && n_points < 200)
            throw Error(ErrorCode::InvalidGrid, "n_points must be >= 200");
        if (n_points < 8)
            throw Error(ErrorCode::InvalidGrid, "grid too coarse");
    }

    VectorXd points() const {
        VectorXd z(n_points);
        double hh = h();
        for (int i = 0; i < n_points; ++i) z[i] = z_min + hh * (i + 1);
        return z;
    }
};

/// Samples of a complex-valued function on a real grid.
struct ComplexGridField {
    GridSpec grid;
    VectorXcd values;

    int size() const { return static_cast<int>(values.size()); }
    /// L2 norm with the trapezoid measure of the uniform grid.
    double l2_norm() const { return std::sqrt(grid.h()) * values.norm(); }
    double max_abs() const { return values.cwiseAbs().maxCoeff(); }

    void normalize_max() {
        double m = max_abs();
        if (m > 0.0) values /= m;
    }
    void normalize_l2() {
        double m = l2_norm();
        if (m > 0.0) values /= m;
    }
};

inline ComplexGridField sample_field(const GridSpec& g, const std::function<cplx(double)>& f) {
    ComplexGridField out{g, VectorXcd(g.n_points)};
    VectorXd z = g.points();
    for (int i = 0; i < g.n_points; ++i) out.values[i] = f(z[i]);
    return out;
}

/// Complex bilinear pseudo-norm sqrt(|int f^2 dz|); the natural pairing for
/// complex symmetric operators.
inline cplx cbilinear(const ComplexGridField& a, const ComplexGridField& b) {
    cplx s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.grid.h();
}
inline double cnorm(const ComplexGridField& f) { return std::sqrt(std::abs(cbilinear(f, f))); }

/// Fourth-order central differences, one-sided at the edges.
inline VectorXcd fd_derivative(const VectorXcd& v, double h) {
    int n = static_cast<int>(v.size());
    VectorXcd d(n);
    for (int i = 2; i + 2 < n; ++i)
        d[i] = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * h);
    if (n >= 3) {
        d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        d[1] = (v[2] - v[0]) / (2.0 * h);
        d[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * h);
        d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    }
    return d;
}

inline VectorXcd fd_second_derivative(const VectorXcd& v, double h) {
    int n = static_cast<int>(v.size());
    VectorXcd d(n);
    for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    if (n >= 4) {
        d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
        d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
    }
    return d;
}

// Periodic Fourier differentiation matrices (Trefethen's closed forms) on an
// even-N grid of spacing h covering a period N*h. Exact for band-limited
// periodic data; fields decaying below roundoff at the edges qualify.
inline Eigen::MatrixXd spectral_d1_matrix(int n, double h) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int k = i - j;
            double s = (k % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * s / std::tan(k * M_PI / n) * (2.0 * M_PI / (n * h));
        }
    return D;
}

inline Eigen::MatrixXd spectral_d2_matrix(int n, double h) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    double scale = std::pow(2.0 * M_PI / (n * h), 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = i - j;
            if (k == 0) {
                D(i, j) = -scale * (static_cast<double>(n) * n + 2.0) / 12.0;
            } else {
                double s = (k % 2 == 0) ? 1.0 : -1.0;
                double sn = std::sin(k * M_PI / n);
                D(i, j) = -scale * s * 0.5 / (sn * sn);
            }
        }
    return D;
}

}  // namespace dds

#endif
