#ifndef DDS_SUPERPOTENTIAL_HPP
#define DDS_SUPERPOTENTIAL_HPP

#include <cmath>
#include <complex>
#include <functional>

#include "dds/grid.hpp"

// SUSY quantum mechanics on the real line:
//   V_-(z) = W(z)^2 - W'(z),  V_+(z) = W(z)^2 + W'(z),
//   H_- = (-d/dz + W)(d/dz + W),  H_+ = (d/dz + W)(-d/dz + W),
// so e^{-int W} is annihilated by (d/dz + W) and e^{+int W} by (-d/dz + W)
// up to normalizability, and A = d/dz + W intertwines H_- eigenfunctions
// into H_+ eigenfunctions at the same E^2.

namespace dds {

struct Superpotential {
    std::function<cplx(double)> value;
    std::function<cplx(double)> derivative;  // analytic W', required

    /// Check the supplied derivative against central differences.
    double derivative_defect(const VectorXd& z, double hstep = 1e-5) const {
        double worst = 0.0;
        for (int i = 0; i < z.size(); ++i) {
            cplx fd = (value(z[i] + hstep) - value(z[i] - hstep)) / (2.0 * hstep);
            worst = std::max(worst, std::abs(derivative(z[i]) - fd));
        }
        return worst;
    }
};

struct PartnerPair {
    std::function<cplx(double)> v_minus;  // W^2 - W'
    std::function<cplx(double)> v_plus;   // W^2 + W'
};

inline PartnerPair partner_potentials(const Superpotential& w) {
    auto wv = w.value;
    auto wd = w.derivative;
    return PartnerPair{
        [wv, wd](double z) { cplx W = wv(z); return W * W - wd(z); },
        [wv, wd](double z) { cplx W = wv(z); return W * W + wd(z); },
    };
}

enum class GroundStateBranch { PlusIntegral, MinusIntegral };

struct GroundState {
    ComplexGridField field;   // exp(+/- int W), unit max modulus
    double residual = 0.0;    // ||(d/dz -/+ W) psi|| / ||psi|| by finite differences
    bool decays_left = false;
    bool decays_right = false;
    bool normalizable = false;
};

/// exp(+/- int_z W) on the grid via per-step Simpson quadrature, normalized to
/// unit max modulus. The annihilation residual uses fourth-order differences;
/// non-normalizability is a flag, not a failure (PT systems may lack a zero
/// mode in one factorization).
inline GroundState ground_state(const Superpotential& w, const GridSpec& grid,
                                GroundStateBranch branch) {
    grid.validate(false);
    const int n = grid.n_points;
    const double h = grid.h();
    VectorXd z = grid.points();

    VectorXcd I(n);
    I[0] = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        cplx mid = w.value(0.5 * (z[i] + z[i + 1]));
        I[i + 1] = I[i] + (h / 6.0) * (w.value(z[i]) + 4.0 * mid + w.value(z[i + 1]));
    }

    double sign = (branch == GroundStateBranch::PlusIntegral) ? 1.0 : -1.0;
    // subtract the max real part before exponentiating to avoid overflow
    double shift = (sign * I.real().array()).maxCoeff();
    ComplexGridField psi{grid, VectorXcd(n)};
    for (int i = 0; i < n; ++i) psi.values[i] = std::exp(sign * I[i] - shift);
    psi.normalize_max();

    GroundState out;
    out.field = psi;

    VectorXcd dpsi = fd_derivative(psi.values, h);
    double num = 0.0, den = 0.0;
    for (int i = 2; i + 2 < n; ++i) {
        cplx r = dpsi[i] - sign * w.value(z[i]) * psi.values[i];
        num += std::norm(r);
        den += std::norm(psi.values[i]);
    }
    out.residual = std::sqrt(num / den);

    double m = psi.max_abs();
    double edge_tol = 1e-4;
    out.decays_left = std::abs(psi.values[0]) < edge_tol * m;
    out.decays_right = std::abs(psi.values[n - 1]) < edge_tol * m;
    out.normalizable = out.decays_left && out.decays_right;
    return out;
}

struct Intertwined {
    ComplexGridField scaled;  // (d/dz + W) phi / sqrt(E^2)
    ComplexGridField raw;     // (d/dz + W) phi
};

/// One intertwining step psi_+ = (d/dz + W) phi / sqrt(E^2). phi must be
/// resolved well enough that spectral differentiation is accurate.
inline Intertwined intertwine_up(const Superpotential& w, const ComplexGridField& phi,
                                 cplx e_squared) {
    if (std::abs(e_squared) <= 1e-10)
        throw Error(ErrorCode::ZeroModeIntertwine, "cannot intertwine a zero mode");
    const int n = phi.size();
    const double h = phi.grid.h();
    VectorXd z = phi.grid.points();

    Eigen::MatrixXd D1 = spectral_d1_matrix(n, h);
    VectorXcd dphi = D1 * phi.values;

    Intertwined out{{phi.grid, VectorXcd(n)}, {phi.grid, VectorXcd(n)}};
    for (int i = 0; i < n; ++i)
        out.raw.values[i] = dphi[i] + w.value(z[i]) * phi.values[i];
    out.scaled.values = out.raw.values / std::sqrt(e_squared);
    return out;
}

/// Same step but with the analytic derivative of phi supplied (used when phi
/// has a closed form; avoids all differentiation error).
inline Intertwined intertwine_up_analytic(const Superpotential& w, const GridSpec& grid,
                                          const std::function<cplx(double)>& phi,
                                          const std::function<cplx(double)>& dphi,
                                          cplx e_squared) {
    if (std::abs(e_squared) <= 1e-10)
        throw Error(ErrorCode::ZeroModeIntertwine, "cannot intertwine a zero mode");
    VectorXd z = grid.points();
    Intertwined out{{grid, VectorXcd(grid.n_points)}, {grid, VectorXcd(grid.n_points)}};
    for (int i = 0; i < grid.n_points; ++i)
        out.raw.values[i] = dphi(z[i]) + w.value(z[i]) * phi(z[i]);
    out.scaled.values = out.raw.values / std::sqrt(e_squared);
    return out;
}

/// || (-psi'' + u psi - E^2 psi) || / || psi || with spectral differentiation.
inline double eigen_residual_spectral(const std::function<cplx(double)>& u,
                                      const ComplexGridField& psi, cplx e2) {
    const int n = psi.size();
    const double h = psi.grid.h();
    VectorXd z = psi.grid.points();
    Eigen::MatrixXd D2 = spectral_d2_matrix(n, h);
    VectorXcd r = -(D2 * psi.values);
    for (int i = 0; i < n; ++i) r[i] += (u(z[i]) - e2) * psi.values[i];
    return r.norm() / psi.values.norm();
}

}  // namespace dds

#endif
