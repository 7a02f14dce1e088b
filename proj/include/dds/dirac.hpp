#ifndef DDS_DIRAC_HPP
#define DDS_DIRAC_HPP

#include <cmath>
#include <functional>

#include "dds/grid.hpp"
#include "dds/scarf.hpp"

// x-space side of the reduction: the effective potentials of the second-order
// Sturm-Liouville form, the coordinate transform z = int dx / V_F, and the
// pullback psi = phi / sqrt(V_F) that assembles spinor components.

namespace dds {

struct FieldProfile {
    std::function<double(double)> fermi_velocity;   // V_F(z in model coordinate)
    std::function<double(double)> d_fermi_velocity;
    std::function<double(double)> d2_fermi_velocity;
    std::function<double(double)> vector_potential;  // A_y
    std::function<double(double)> d_vector_potential;
};

/// Profile of the concrete model, V_F = K1 tanh_q, A = K2 sech_q, with
/// analytic derivatives. Functions of the z coordinate.
inline FieldProfile model_profile(const ModelParams& p) {
    p.validate();
    double K1 = p.K1, K2 = p.K2;
    cplx q = p.q;
    return FieldProfile{
        [K1, q](double z) { return K1 * tanh_q(z, q).real(); },
        [K1, q](double z) { return K1 * dtanh_q(z, q).real(); },
        [K1, q](double z) {
            // d/dz (q sech^2) = -2 q sech^2 tanh
            cplx s = sech_q(z, q), t = tanh_q(z, q);
            return (K1 * (-2.0) * q * s * s * t).real();
        },
        [K2, q](double z) { return K2 * sech_q(z, q).real(); },
        [K2, q](double z) { return K2 * dsech_q(z, q).real(); },
    };
}

/// Effective x-space potentials (the second-order reduction):
///   U_eff,A/B = -(e A - i k V_F)^2 +/- i V_F (e A' - i k V_F')
///               - V_F'^2/4 - V_F V_F''/2.
/// The component flag picks the sign of the middle term.
inline cplx effective_potential_x(PotentialComponent c, const FieldProfile& f, double k,
                                  double e, double x, double x_lo = -1e9, double x_hi = 1e9) {
    if (x < x_lo || x > x_hi) throw Error(ErrorCode::OutOfDomain, "x outside declared domain");
    double V = f.fermi_velocity(x);
    double dV = f.d_fermi_velocity(x);
    double d2V = f.d2_fermi_velocity(x);
    double A = f.vector_potential(x);
    double dA = f.d_vector_potential(x);
    cplx core = cplx(e * A, -k * V);
    cplx mid = cplx(0.0, V) * cplx(e * dA, -k * dV);
    double sgn = (c == PotentialComponent::A) ? 1.0 : -1.0;
    return -core * core + sgn * mid - 0.25 * dV * dV - 0.5 * V * d2V;
}

enum class MapDirection { XofZ, ZofX };

/// x(z) = K1 log(cosh_q z) + const, anchored so x(z0) = 0; z(x) by bracketed
/// root finding. Valid on the half-line where V_F = K1 tanh_q z > 0.
class CoordinateMap {
public:
    CoordinateMap(const ModelParams& p, double anchor_z)
        : p_(p), z0_(anchor_z) {
        p_.validate();
        if (!(p_.q.imag() == 0.0) || !(p_.q.real() > 0.0))
            throw Error(ErrorCode::InvalidConfig, "coordinate map requires real q > 0");
        zc_ = 0.5 * std::log(p_.q.real());
        // V_F > 0 on the side of the tanh_q zero selected by the sign of K1
        positive_side_ = p_.K1 > 0.0;
        if (vf(z0_) <= 0.0)
            throw Error(ErrorCode::NonMonotone, "anchor lies outside the V_F > 0 domain");
        c0_ = -antiderivative(z0_);
    }

    double vf(double z) const { return p_.K1 * tanh_q(z, p_.q).real(); }

    double x_of_z(double z) const {
        check_domain(z);
        return antiderivative(z) + c0_;
    }

    /// x(z) is strictly increasing on the half-line (dx/dz = V_F > 0), so an
    /// expanding bracket plus bisection inverts it.
    double z_of_x(double x) const {
        auto g = [&](double z) { return x_of_z(z) - x; };
        double lo = z0_, hi = z0_;
        double g0 = g(z0_);
        if (g0 == 0.0) return z0_;
        const double edge = positive_side_ ? zc_ + 1e-10 : zc_ - 1e-10;
        if (g0 < 0.0) {  // need larger z
            double step = 1.0;
            while (true) {
                hi = positive_side_ ? hi + step : std::min(hi + step, edge);
                if (g(hi) >= 0.0) break;
                if (!positive_side_ && hi >= edge)
                    throw Error(ErrorCode::OutOfRange, "x above the map range");
                if (hi > 1e6) throw Error(ErrorCode::OutOfRange, "x beyond the map range");
                step *= 2.0;
            }
        } else {  // need smaller z
            double step = 1.0;
            while (true) {
                lo = positive_side_ ? std::max(lo - step, edge) : lo - step;
                if (g(lo) <= 0.0) break;
                if (positive_side_ && lo <= edge)
                    throw Error(ErrorCode::OutOfRange, "x below the map range");
                if (lo < -1e6) throw Error(ErrorCode::OutOfRange, "x beyond the map range");
                step *= 2.0;
            }
        }
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    double center() const { return zc_; }

private:
    double antiderivative(double z) const {
        return p_.K1 * std::log(cosh_q(z, p_.q)).real();
    }
    void check_domain(double z) const {
        if (vf(z) <= 0.0)
            throw Error(ErrorCode::NonMonotone, "V_F <= 0 at requested z");
    }
    ModelParams p_;
    double z0_, zc_, c0_ = 0.0;
    bool positive_side_ = true;
};

inline double coordinate_map(const ModelParams& p, MapDirection dir, double value,
                             double anchor_z) {
    CoordinateMap m(p, anchor_z);
    return dir == MapDirection::XofZ ? m.x_of_z(value) : m.z_of_x(value);
}

struct SpinorSolution {
    ComplexGridField psi_a;  // on the z grid; x positions in x_points
    ComplexGridField psi_b;
    VectorXd x_points;
    cplx energy;
    double k_y = 0.0;
    double residual_a = 0.0;
    double residual_b = 0.0;
};

namespace detail {

/// Residual of the x-space second-order equation, evaluated through the exact
/// change of variables (all derivatives taken spectrally in z):
///   -V^2 psi_xx - 2 V V_x psi_x + U_eff psi - E^2 psi.
inline double spinor_residual(const ModelParams& p, PotentialComponent comp,
                              const ComplexGridField& phi, cplx e2) {
    const int n = phi.size();
    const double h = phi.grid.h();
    VectorXd z = phi.grid.points();
    FieldProfile f = model_profile(p);

    Eigen::MatrixXd D1 = spectral_d1_matrix(n, h);
    // psi = phi / sqrt(V); derivatives in z
    VectorXcd psi(n);
    for (int i = 0; i < n; ++i) psi[i] = phi.values[i] / std::sqrt(f.fermi_velocity(z[i]));
    VectorXcd dpsi = D1 * psi;
    VectorXcd d2psi = D1 * dpsi;

    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        double V = f.fermi_velocity(z[i]);
        double dVdz = f.d_fermi_velocity(z[i]);
        // x-derivatives via d/dx = (1/V) d/dz
        cplx psi_x = dpsi[i] / V;
        cplx psi_xx = (d2psi[i] / V - dpsi[i] * (dVdz / (V * V))) / V;
        double dVdx = dVdz / V;
        cplx ueff;
        {
            double A = f.vector_potential(z[i]);
            double dAdx = f.d_vector_potential(z[i]) / V;
            double d2Vdx2 = (f.d2_fermi_velocity(z[i]) / V - dVdz * dVdz / (V * V)) / V;
            cplx core = cplx(p.e * A, -p.k * V);
            cplx mid = cplx(0.0, V) * cplx(p.e * dAdx, -p.k * dVdx);
            double sgn = (comp == PotentialComponent::A) ? 1.0 : -1.0;
            ueff = -core * core + sgn * mid - 0.25 * dVdx * dVdx - 0.5 * V * d2Vdx2;
        }
        cplx r = -V * V * psi_xx - 2.0 * V * dVdx * psi_x + ueff * psi[i] - e2 * psi[i];
        num += std::norm(r);
        den += std::norm(psi[i]) * std::max(1.0, std::norm(e2));
    }
    return std::sqrt(num / den);
}

}  // namespace detail

/// Pull a pair of z-space solutions back to spinor components on the x image
/// of the grid and validate the second-order equation for each component.
inline SpinorSolution assemble_spinor(const ComplexGridField& phi_a,
                                      const ComplexGridField& phi_b, const ModelParams& p,
                                      cplx energy, double residual_tol = 1e-3) {
    if (phi_a.size() != phi_b.size())
        throw Error(ErrorCode::InvalidGrid, "spinor components on different grids");
    const int n = phi_a.size();
    VectorXd z = phi_a.grid.points();
    FieldProfile f = model_profile(p);
    CoordinateMap map(p, z[n / 2]);

    SpinorSolution out;
    out.energy = energy;
    out.k_y = p.k;
    out.psi_a = ComplexGridField{phi_a.grid, VectorXcd(n)};
    out.psi_b = ComplexGridField{phi_b.grid, VectorXcd(n)};
    out.x_points = VectorXd(n);
    for (int i = 0; i < n; ++i) {
        double V = f.fermi_velocity(z[i]);
        if (V <= 0.0) throw Error(ErrorCode::NonMonotone, "V_F <= 0 on the assembly grid");
        out.x_points[i] = map.x_of_z(z[i]);
        out.psi_a.values[i] = phi_a.values[i] / std::sqrt(V);
        out.psi_b.values[i] = phi_b.values[i] / std::sqrt(V);
    }
    out.residual_a = detail::spinor_residual(p, PotentialComponent::A, phi_a, energy * energy);
    out.residual_b = detail::spinor_residual(p, PotentialComponent::B, phi_b, energy * energy);
    if (out.residual_a > residual_tol || out.residual_b > residual_tol)
        throw Error(ErrorCode::ResidualTooLarge, "spinor components fail the second-order equation");
    return out;
}

}  // namespace dds

#endif
