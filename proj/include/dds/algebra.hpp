#ifndef DDS_ALGEBRA_HPP
#define DDS_ALGEBRA_HPP

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "dds/deviation.hpp"
#include "dds/grid.hpp"
#include "dds/qdeform.hpp"

// Extended so(2,1) realization on functions f(z) e^{i mu phi}:
//   J3          : (mu, f) -> (mu, mu f)
//   J+/-        : (mu, f) -> (mu +/- 1, +/- f' + [-(mu +/- 1/2) F - G + U(., mu +/- 1/2)] f)
// with F = tanh_q, G = i B1 sech_q and rational U(z, nu) = c(nu) cosh_q/(r1 + r2 sinh_q).
// Acting on a fixed sector mu, the commutator [J+, J-] = -2 J3 closes exactly
// iff F' + F^2 = 1, G' + F G = 0 and a compatibility identity between the two
// slot values U1 = U(., mu - 1/2), U2 = U(., mu + 1/2). With the concrete F, G
// the first two hold identically; the compatibility identity is solvable with
// a constant-coefficient U exactly when q = -r1^2/r2^2 (the restriction the
// paper prints), with closing values
//   U1 = r2 (2 mu - 1) cosh_q / (r1 + r2 sinh_q),  U2 = 0,
//   B1 = -i r1 (1 - mu)/r2,
// which differ from the printed S1 = i r2 (2 mu - 1), B = -r1 (1 - mu)/r2 by
// sign/i factors; both parameter sets are carried and compared.

namespace dds {

enum class Generator { J3, JPlus, JMinus };

struct AlgebraParams {
    cplx q = 1.0;   // deformation used by F, G, U
    cplx r1 = 1.0, r2 = 1.0;
    cplx B1 = 0.0;  // G = i B1 sech_q
    cplx c1 = 0.0;  // U1 = c1 cosh_q / (r1 + r2 sinh_q)   (slot mu - 1/2)
    cplx c2 = 0.0;  // U2 = c2 cosh_q / (r1 + r2 sinh_q)   (slot mu + 1/2)
    double mu_home = 0.0;  // sector at which the slot values are defined
};

/// Eq 34 as printed: S1 = i r2 (2 mu - 1), q = -r1^2/r2^2, B = -r1(1-mu)/r2.
struct RestrictedParams {
    cplx S1, q, B1;
};

inline RestrictedParams restrict_parameters(cplx r1, cplx r2, double mu) {
    if (r2 == cplx(0.0)) throw Error(ErrorCode::DegenerateR2, "r2 must be nonzero");
    return RestrictedParams{cplx(0.0, 1.0) * r2 * (2.0 * mu - 1.0), -r1 * r1 / (r2 * r2),
                            -r1 * (1.0 - mu) / r2};
}

/// Rational-numerator coefficients of eq 33; all three vanish under eq 34.
inline std::array<cplx, 3> eq33_numerator_constants(cplx S1, cplx B1, cplx q, cplx r1, cplx r2,
                                                    double mu) {
    cplx i(0.0, 1.0);
    return {
        -2.0 * S1 * (B1 * r1 + q * r2 * (mu - 1.0)),
        S1 * (i * S1 + r2 * (2.0 * mu - 1.0)),
        -2.0 * S1 * (r1 + B1 * r2 - r1 * mu),
    };
}

/// Realization with the paper's printed restricted values (plus a supplied
/// U2 coefficient; the paper never prints S2 in closed form).
inline AlgebraParams printed_restricted_params(cplx r1, cplx r2, double mu, cplx S2 = 0.0) {
    RestrictedParams rp = restrict_parameters(r1, r2, mu);
    AlgebraParams a;
    a.q = rp.q;
    a.r1 = r1;
    a.r2 = r2;
    a.B1 = rp.B1;
    a.c1 = cplx(0.0, 1.0) * rp.S1;  // U1 = i S1 C/D
    a.c2 = S2;
    a.mu_home = mu;
    return a;
}

/// The parameter set that actually closes [J+, J-] = -2 J3 on sector mu.
inline AlgebraParams closing_params(cplx r1, cplx r2, double mu) {
    if (r2 == cplx(0.0)) throw Error(ErrorCode::DegenerateR2, "r2 must be nonzero");
    AlgebraParams a;
    a.q = -r1 * r1 / (r2 * r2);
    a.r1 = r1;
    a.r2 = r2;
    a.B1 = -cplx(0.0, 1.0) * r1 * (1.0 - mu) / r2;
    a.c1 = r2 * (2.0 * mu - 1.0);
    a.c2 = 0.0;
    a.mu_home = mu;
    return a;
}

/// Plain so(2,1): no rational extension; any B1 works.
inline AlgebraParams plain_params(cplx q, cplx B1, double mu) {
    AlgebraParams a;
    a.q = q;
    a.B1 = B1;
    a.mu_home = mu;
    a.r1 = 1.0;
    a.r2 = 1.0;
    return a;
}

struct AlgebraRealization {
    AlgebraParams params;

    cplx F(double z) const { return tanh_q(z, params.q); }
    cplx dF(double z) const { return dtanh_q(z, params.q); }
    cplx G(double z) const { return cplx(0.0, 1.0) * params.B1 * sech_q(z, params.q); }
    cplx dG(double z) const { return cplx(0.0, 1.0) * params.B1 * dsech_q(z, params.q); }

    cplx slot_coeff(double nu) const {
        if (std::abs(nu - (params.mu_home - 0.5)) < 1e-9) return params.c1;
        if (std::abs(nu - (params.mu_home + 0.5)) < 1e-9) return params.c2;
        throw Error(ErrorCode::OutOfRange, "U slot outside the home sector's neighbors");
    }
    cplx U(double nu, double z) const {
        cplx c = slot_coeff(nu);
        if (c == cplx(0.0)) return 0.0;
        return c * cosh_q(z, params.q) / (params.r1 + params.r2 * sinh_q(z, params.q));
    }
    cplx dU(double nu, double z) const {
        cplx c = slot_coeff(nu);
        if (c == cplx(0.0)) return 0.0;
        cplx den = params.r1 + params.r2 * sinh_q(z, params.q);
        return c * (params.r1 * sinh_q(z, params.q) - params.q * params.r2) / (den * den);
    }

    /// The first-order coefficient of J+/- at a given sector:
    /// W(z) = -(mu +/- 1/2) F - G + U(., mu +/- 1/2).
    cplx gen_coeff(bool plus, double sector, double z) const {
        double nu = sector + (plus ? 0.5 : -0.5);
        return -nu * F(z) - G(z) + U(nu, z);
    }
    cplx gen_coeff_derivative(bool plus, double sector, double z) const {
        double nu = sector + (plus ? 0.5 : -0.5);
        return -nu * dF(z) - dG(z) + dU(nu, z);
    }

    /// Structure-function residuals of eq 24 under both sign conventions.
    /// F = tanh_q satisfies F' + F^2 = 1 identically; the printed F' - F^2 = 1
    /// does not hold for it.
    std::array<double, 4> eq24_residuals(const VectorXd& z) const {
        double fp = 0.0, fm = 0.0, gp = 0.0, gm = 0.0;
        for (int i = 0; i < z.size(); ++i) {
            cplx Fv = F(z[i]), dFv = dF(z[i]), Gv = G(z[i]), dGv = dG(z[i]);
            fp = std::max(fp, std::abs(dFv + Fv * Fv - 1.0));
            fm = std::max(fm, std::abs(dFv - Fv * Fv - 1.0));
            gp = std::max(gp, std::abs(dGv + Fv * Gv));
            gm = std::max(gm, std::abs(dGv - Fv * Gv));
        }
        return {fp, fm, gp, gm};
    }
};

/// Function-space state f(z) e^{i mu phi}; mu is carried exactly, only z is
/// gridded. The analytic derivative rides along for generator applications.
struct AlgebraState {
    double mu = 0.0;
    ComplexGridField f;
    VectorXcd df;  // analytic d/dz of f on the same grid
};

inline AlgebraState apply_generator(Generator gen, const AlgebraState& s,
                                    const AlgebraRealization& r) {
    const int n = s.f.size();
    VectorXd z = s.f.grid.points();
    AlgebraState out;
    out.f.grid = s.f.grid;
    out.f.values = VectorXcd(n);
    out.df = VectorXcd(n);
    switch (gen) {
        case Generator::J3: {
            out.mu = s.mu;
            out.f.values = s.mu * s.f.values;
            out.df = s.mu * s.df;
            return out;
        }
        case Generator::JPlus:
        case Generator::JMinus: {
            bool plus = gen == Generator::JPlus;
            double sgn = plus ? 1.0 : -1.0;
            out.mu = s.mu + sgn;
            for (int i = 0; i < n; ++i) {
                cplx W = r.gen_coeff(plus, s.mu, z[i]);
                cplx dW = r.gen_coeff_derivative(plus, s.mu, z[i]);
                out.f.values[i] = sgn * s.df[i] + W * s.f.values[i];
                // derivative of the result needs f''; recover it from the state
                // via a spectral estimate only when a caller asks (kept zero
                // here; compositions below track jets explicitly).
                out.df[i] = dW * s.f.values[i] + W * s.df[i];  // + sgn * f'' added by jet paths
            }
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// compositions with explicit jets (f, f', f'')
// ---------------------------------------------------------------------------

struct TestFunction {
    std::function<cplx(double)> f, df, d2f;
};

/// Gaussian bumps with analytic jets; effectively compactly supported on the
/// grids used here.
inline std::vector<TestFunction> gaussian_test_functions(int count, unsigned seed,
                                                         double spread = 1.2) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(-1.2, 1.2), width(0.5, 1.4), amp(0.5, 1.5);
    std::vector<TestFunction> out;
    for (int i = 0; i < count; ++i) {
        double a = pos(rng) * spread, s = width(rng), A = amp(rng);
        out.push_back(TestFunction{
            [a, s, A](double z) { return cplx(A * std::exp(-((z - a) / s) * ((z - a) / s))); },
            [a, s, A](double z) {
                double g = std::exp(-((z - a) / s) * ((z - a) / s));
                return cplx(A * g * (-2.0 * (z - a) / (s * s)));
            },
            [a, s, A](double z) {
                double g = std::exp(-((z - a) / s) * ((z - a) / s));
                double t = (z - a) / (s * s);
                return cplx(A * g * (4.0 * t * (z - a) / (s * s) - 2.0 / (s * s)));
            },
        });
    }
    return out;
}

namespace detail {

struct Jet {
    cplx f, df;
};

/// One generator application on a jet: returns (g, g') with
/// g = s f' + W f, g' = s f'' + W' f + W f'.
inline Jet gen_jet(const AlgebraRealization& r, bool plus, double sector, double z, cplx f,
                   cplx df, cplx d2f) {
    double sgn = plus ? 1.0 : -1.0;
    cplx W = r.gen_coeff(plus, sector, z);
    cplx dW = r.gen_coeff_derivative(plus, sector, z);
    return Jet{sgn * df + W * f, sgn * d2f + dW * f + W * df};
}

}  // namespace detail

/// [J+, J-] f + 2 mu f on a pointwise basis with analytic jets; exact closure
/// makes this vanish to rounding.
inline cplx commutator_defect(const AlgebraRealization& r, double mu, double z, cplx f, cplx df,
                              cplx d2f) {
    // J+ J- : J- at mu, then J+ at mu-1; both carry slot mu - 1/2.
    detail::Jet jm = detail::gen_jet(r, false, mu, z, f, df, d2f);
    cplx Wp = r.gen_coeff(true, mu - 1.0, z);
    cplx jpjm = jm.df + Wp * jm.f;
    // J- J+ : J+ at mu, then J- at mu+1; both carry slot mu + 1/2.
    detail::Jet jp = detail::gen_jet(r, true, mu, z, f, df, d2f);
    cplx Wm = r.gen_coeff(false, mu + 1.0, z);
    cplx jmjp = -jp.df + Wm * jp.f;
    return jpjm - jmjp + 2.0 * mu * f;
}

/// [J3, J+/-] f -/+ J+/- f ; vanishes by the phase bookkeeping.
inline cplx j3_ladder_defect(const AlgebraRealization& r, bool plus, double mu, double z, cplx f,
                             cplx df) {
    double sgn = plus ? 1.0 : -1.0;
    cplx W = r.gen_coeff(plus, mu, z);
    cplx jf = sgn * df + W * f;
    cplx j3j = (mu + sgn) * jf;  // J3 after J+/-
    cplx jj3 = mu * jf;          // J+/- after J3 (J3 scales f by mu)
    return (j3j - jj3) - sgn * jf;
}

/// J^2 f = mu^2 f - (J+J- + J-J+) f / 2 on a jet.
inline cplx casimir_apply(const AlgebraRealization& r, double mu, double z, cplx f, cplx df,
                          cplx d2f) {
    detail::Jet jm = detail::gen_jet(r, false, mu, z, f, df, d2f);
    cplx Wp = r.gen_coeff(true, mu - 1.0, z);
    cplx jpjm = jm.df + Wp * jm.f;
    detail::Jet jp = detail::gen_jet(r, true, mu, z, f, df, d2f);
    cplx Wm = r.gen_coeff(false, mu + 1.0, z);
    cplx jmjp = -jp.df + Wm * jp.f;
    return mu * mu * f - 0.5 * (jpjm + jmjp);
}

// ---------------------------------------------------------------------------
// Casimir-derived potential
// ---------------------------------------------------------------------------

/// Closed form of the potential in H_- = -(J^2 + 1/4) for the closing
/// realization (a = J_- coefficient at the home sector):
///   V = a^2 + a' - (mu - 1/2)^2
///     = 2 mu (1 - mu) (r1/r2) tanh_q sech_q - q (2 mu^2 - 2 mu + 3/4) sech_q^2,
/// a deformed Scarf form with q = -r1^2/r2^2.
inline cplx casimir_potential_closed(const AlgebraRealization& r, double mu, cplx z) {
    cplx a = -(mu - 0.5) * tanh_q(z, r.params.q) - r.G(z.real()) + r.U(mu - 0.5, z.real());
    cplx da = -(mu - 0.5) * dtanh_q(z, r.params.q) - r.dG(z.real()) + r.dU(mu - 0.5, z.real());
    return a * a + da - (mu - 0.5) * (mu - 0.5);
}

/// Printed eq 35 (restricted) and eq 33 (unrestricted), verbatim.
inline cplx casimir_potential_printed_restricted(double mu, cplx r1, cplx r2, cplx z) {
    cplx q = -r1 * r1 / (r2 * r2);
    cplx rho = r1 / r2;
    cplx T = tanh_q(z, q), S = sech_q(z, q);
    return q * (0.25 - mu) + 2.0 * cplx(0.0, 1.0) * mu * (1.0 - mu) * rho * T * S -
           rho * rho * (1.0 - mu) * (1.0 - mu) * S * S;
}

inline cplx casimir_potential_printed_full(double mu, cplx S1, cplx B1, cplx q, cplx r1, cplx r2,
                                           cplx z) {
    cplx T = tanh_q(z, q), S = sech_q(z, q), C = cosh_q(z, q), Sh = sinh_q(z, q);
    cplx den = r1 + r2 * Sh;
    auto nc = eq33_numerator_constants(S1, B1, q, r1, r2, mu);
    cplx rational = (nc[0] + nc[1] * C * C + nc[2] * Sh) / (den * den);
    return q * (0.25 - mu) - 2.0 * cplx(0.0, 1.0) * mu * B1 * T * S - B1 * B1 * S * S + rational;
}

struct CasimirValue {
    cplx printed;      // eq 35 / eq 33 as printed
    cplx closed_form;  // a^2 + a' - (mu - 1/2)^2 for the realization at hand
};

inline CasimirValue casimir_potential(double mu, const AlgebraRealization& r, bool restricted,
                                      cplx z) {
    if (near_cosh_pole(z, r.params.q)) throw Error(ErrorCode::PoleAtZ, "casimir potential at a pole");
    CasimirValue out;
    out.closed_form = casimir_potential_closed(r, mu, z);
    if (restricted) {
        out.printed = casimir_potential_printed_restricted(mu, r.params.r1, r.params.r2, z);
    } else {
        cplx S1 = -cplx(0.0, 1.0) * r.params.c1;  // U1 = i S1 C/D
        out.printed =
            casimir_potential_printed_full(mu, S1, r.params.B1, r.params.q, r.params.r1,
                                           r.params.r2, z);
    }
    return out;
}

// ---------------------------------------------------------------------------
// diagnostics: residuals, ladder, spectrum
// ---------------------------------------------------------------------------

struct AlgebraResiduals {
    double commutator_pm = 0.0;   // [J+,J-] + 2 J3
    double commutator_j3 = 0.0;   // [J3,J+/-] -/+ J+/-
    std::array<double, 4> eq24{}; // F'+F^2-1, F'-F^2-1, G'+FG, G'-FG
    double eq25_printed = 0.0;    // printed eq 25 with the realization's values
    cplx best_fit_S2{};           // least-squares constant S2 for printed eq 25
    double eq25_best_fit = 0.0;   // residual with that S2
};

namespace detail {

inline cplx eq25_printed_lhs(const AlgebraRealization& r, double mu, double z, cplx S2) {
    // U1^2 - U1' + 2 U1 (F (mu + 1/2) - G) - (U2^2 + U2' + 2 U2 (F (mu - 1/2) - G))
    cplx U1 = r.U(mu - 0.5, z);
    cplx dU1 = r.dU(mu - 0.5, z);
    cplx den = r.params.r1 + r.params.r2 * sinh_q(z, r.params.q);
    cplx U2 = S2 * cosh_q(z, r.params.q) / den;
    cplx dU2 = S2 * (r.params.r1 * sinh_q(z, r.params.q) - r.params.q * r.params.r2) / (den * den);
    cplx F = r.F(z), G = r.G(z);
    return U1 * U1 - dU1 + 2.0 * U1 * (F * (mu + 0.5) - G) -
           (U2 * U2 + dU2 + 2.0 * U2 * (F * (mu - 0.5) - G));
}

}  // namespace detail

inline AlgebraResiduals algebra_residuals(const AlgebraRealization& r, double mu,
                                          const std::vector<TestFunction>& fns,
                                          const GridSpec& grid) {
    AlgebraResiduals out;
    VectorXd z = grid.points();
    for (const auto& fn : fns) {
        double num_pm = 0.0, num_j3 = 0.0, den = 0.0;
        for (int i = 0; i < z.size(); ++i) {
            cplx f = fn.f(z[i]), df = fn.df(z[i]), d2f = fn.d2f(z[i]);
            num_pm += std::norm(commutator_defect(r, mu, z[i], f, df, d2f));
            num_j3 += std::norm(j3_ladder_defect(r, true, mu, z[i], f, df));
            num_j3 += std::norm(j3_ladder_defect(r, false, mu, z[i], f, df));
            den += std::norm(f);
        }
        out.commutator_pm = std::max(out.commutator_pm, std::sqrt(num_pm / den));
        out.commutator_j3 = std::max(out.commutator_j3, std::sqrt(num_j3 / den));
    }
    out.eq24 = r.eq24_residuals(z);

    // printed eq 25: residual with the realization's own U2 and the best
    // constant S2 in least squares over the grid window
    {
        double worst = 0.0;
        for (int i = 0; i < z.size(); i += std::max<int>(1, z.size() / 20))
            worst = std::max(worst,
                             std::abs(detail::eq25_printed_lhs(r, mu, z[i], r.params.c2)));
        out.eq25_printed = worst;

        // LHS is quadratic in S2: lhs = A(z) S2^2 + B(z) S2 + C(z); least
        // squares via a small scan refined by Newton on d/dS2 sum |lhs|^2.
        auto lhs_at = [&](cplx s2, double zz) { return detail::eq25_printed_lhs(r, mu, zz, s2); };
        auto cost = [&](cplx s2) {
            double c = 0.0;
            for (int i = 0; i < z.size(); i += std::max<int>(1, z.size() / 20))
                c += std::norm(lhs_at(s2, z[i]));
            return c;
        };
        cplx best = 0.0;
        double bc = cost(best);
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int t = 0; t < 400; ++t) {
            cplx s2(u(rng), u(rng));
            double c = cost(s2);
            if (c < bc) { bc = c; best = s2; }
        }
        for (double step = 0.5; step > 1e-7; step *= 0.5) {
            bool moved = true;
            while (moved) {
                moved = false;
                for (cplx d : {cplx(step, 0.0), cplx(-step, 0.0), cplx(0.0, step), cplx(0.0, -step)}) {
                    double c = cost(best + d);
                    if (c < bc) { bc = c; best = best + d; moved = true; }
                }
            }
        }
        out.best_fit_S2 = best;
        double worst = 0.0;
        for (int i = 0; i < z.size(); i += std::max<int>(1, z.size() / 20))
            worst = std::max(worst, std::abs(lhs_at(best, z[i])));
        out.eq25_best_fit = worst;
    }
    return out;
}

// ---------------------------------------------------------------------------
// algebraic spectrum (eq 38) and the eq 14 concordance
// ---------------------------------------------------------------------------

struct AlgebraSpectrum {
    cplx q_alg;      // -r1^2/r2^2
    double mu;       // lambda1 - 1/2 under the end-of-section-3 identification
    cplx e_squared;  // q(1/4 - mu) - (mu + 1/2 - n)^2
    cplx e;
    bool consistent_with_eq14 = false;
    cplx printed_eq36_q{};   // literal eq 36 candidate (diagnostic)
    cplx printed_eq37_mu{};  // literal eq 37 candidate (diagnostic)
};

/// Eq 38 with (q_alg, mu) fixed by the identification q(1/4 - mu) = the eq 14
/// constant and lambda1 = mu + 1/2; r1, r2 supply q_alg = -r1^2/r2^2 and are
/// checked against the identification.
inline AlgebraSpectrum algebra_spectrum(cplx eq14_constant, cplx lambda1, cplx r1, cplx r2,
                                        int n, const ModelParams* model = nullptr) {
    if (r2 == cplx(0.0)) throw Error(ErrorCode::DegenerateR2, "r2 must be nonzero");
    AlgebraSpectrum out;
    out.q_alg = -r1 * r1 / (r2 * r2);
    out.mu = (lambda1 - 0.5).real();
    if (!(n < out.mu + 0.5))
        throw Error(ErrorCode::OutOfLadder, "n_max < mu + 1/2 violated");
    cplx c = out.q_alg * (0.25 - out.mu);
    out.consistent_with_eq14 = std::abs(c - eq14_constant) <= 1e-8 * std::max(1.0, std::abs(eq14_constant));
    cplx d = cplx(out.mu + 0.5 - n);
    out.e_squared = c - d * d;
    out.e = std::sqrt(out.e_squared);
    if (out.e.real() < 0.0) out.e = -out.e;

    if (model) {
        // literal eq 36/37 candidates, evaluated as printed (diagnostics only)
        double e = model->e, k = model->k, K1 = model->K1, K2 = model->K2;
        cplx inner = r1 * (r1 - e * K2 * (1.0 + 2.0 * k * K2) * r2);
        cplx sq = std::sqrt(inner);
        out.printed_eq36_q = 1.0 / (2.0 * k * k * K1 * K1) *
                             (-2.0 * k * k * K1 - 2.0 * e * e * K2 * K2 +
                              (inner - r1 * sq / (r2 * r2)) / (r2 * r2));
        cplx rad = 1.0 - 2.0 * e * K2 * r2 / r1 - 4.0 * e * K2 * K2 * r2 / (r2 * r2);
        out.printed_eq37_mu = 0.5 + 0.5 * std::sqrt(rad);
    }
    return out;
}

/// Choose (r1, r2) real with q_alg = -r1^2/r2^2 matching the identification
/// q_alg (1/4 - mu) = eq14 constant; returns r1 with r2 = 1.
inline cplx identify_r_ratio(cplx eq14_constant, cplx lambda1) {
    double mu = (lambda1 - 0.5).real();
    if (std::abs(0.25 - mu) < 1e-12)
        throw Error(ErrorCode::InconsistentMatch, "mu = 1/4 degenerates the identification");
    cplx q_alg = eq14_constant / (0.25 - mu);
    return std::sqrt(-q_alg);  // r1/r2
}

// ---------------------------------------------------------------------------
// ladder diagnostics (eq 28)
// ---------------------------------------------------------------------------

struct LadderDiagnostics {
    double ratio_plus = 0.0;     // c-norm ratio ||J+ s|| / ||s||
    double ratio_minus = 0.0;
    double coef_plus = 0.0;      // |sqrt(-(j - mu)(j + mu + 1))|
    double coef_minus = 0.0;     // |sqrt(-(j + mu)(j - mu + 1))|
    double l2_ratio_plus = 0.0;  // same ratios in the plain L2 norm
    double l2_ratio_minus = 0.0;
    double roundtrip = 0.0;      // || J-J+ s - (-(j-mu)(j+mu+1)) s || / || s ||
};

/// Norms use the complex bilinear pairing, under which the first-order
/// generators are skew-transpose pairs and eq 28's coefficients are exact.
inline LadderDiagnostics ladder_check(const AlgebraState& s, cplx j,
                                      const AlgebraRealization& r) {
    LadderDiagnostics out;
    cplx mu(s.mu);
    out.coef_plus = std::abs(std::sqrt(-(j - mu) * (j + mu + 1.0)));
    out.coef_minus = std::abs(std::sqrt(-(j + mu) * (j - mu + 1.0)));

    AlgebraState up = apply_generator(Generator::JPlus, s, r);
    AlgebraState dn = apply_generator(Generator::JMinus, s, r);
    double base_c = cnorm(s.f), base_2 = s.f.values.norm();
    out.ratio_plus = cnorm(up.f) / base_c;
    out.ratio_minus = cnorm(dn.f) / base_c;
    out.l2_ratio_plus = up.f.values.norm() / base_2;
    out.l2_ratio_minus = dn.f.values.norm() / base_2;

    // J- J+ s via jets: d(J+ s) needs f''; reconstruct from df spectrally
    const int n = s.f.size();
    VectorXd z = s.f.grid.points();
    Eigen::MatrixXd D1 = spectral_d1_matrix(n, s.f.grid.h());
    VectorXcd d2f = D1 * s.df;
    double num = 0.0, den = 0.0;
    cplx target = -(j - mu) * (j + mu + 1.0);
    for (int i = 0; i < n; ++i) {
        detail::Jet jp = detail::gen_jet(r, true, s.mu, z[i], s.f.values[i], s.df[i], d2f[i]);
        cplx Wm = r.gen_coeff(false, s.mu + 1.0, z[i]);
        cplx jmjp = -jp.df + Wm * jp.f;
        num += std::norm(jmjp - target * s.f.values[i]);
        den += std::norm(s.f.values[i]);
    }
    out.roundtrip = std::sqrt(num / den);
    return out;
}

}  // namespace dds

#endif
