#ifndef DDS_QDEFORM_HPP
#define DDS_QDEFORM_HPP

#include <cmath>
#include <complex>

#include "dds/error.hpp"

// q-deformed hyperbolic functions
//   cosh_q z = (e^z + q e^{-z})/2,   sinh_q z = (e^z - q e^{-z})/2,
//   cosh_q^2 - sinh_q^2 = q,         tanh_q = sinh_q/cosh_q,  sech_q = 1/cosh_q.
// For q > 0 these are a shift-scale of the ordinary functions:
//   cosh_q z = sqrt(q) cosh(z - ln(q)/2).
// For q < 0, cosh_q has a real zero at z = ln(-q)/2.

namespace dds {

using cplx = std::complex<double>;

enum class QHyperbolic { Cosh, Sinh, Tanh, Sech };
enum class PhaseHelper { ArctanTanhHalf, ArctanSinh };

struct Deformation {
    cplx q;

    explicit Deformation(cplx q_) : q(q_) {
        if (q == cplx(0.0, 0.0))
            throw Error(ErrorCode::DegenerateDeformation, "q = 0 degenerates cosh_q, sinh_q to e^z/2");
    }
    /// PT reflection center for real q > 0.
    double center() const { return 0.5 * std::log(q.real()); }
};

namespace detail {
// Exponentials split symmetrically so cosh_q^2 - sinh_q^2 = q holds to rounding.
inline void qexp_parts(cplx z, cplx q, cplx& ep, cplx& em) {
    ep = std::exp(z);
    em = q * std::exp(-z);
}
}  // namespace detail

inline cplx cosh_q(cplx z, cplx q) {
    cplx ep, em;
    detail::qexp_parts(z, q, ep, em);
    return 0.5 * (ep + em);
}

inline cplx sinh_q(cplx z, cplx q) {
    cplx ep, em;
    detail::qexp_parts(z, q, ep, em);
    return 0.5 * (ep - em);
}

/// Pole test: cosh_q vanishes on the real line when q < 0 (at z = ln(-q)/2).
inline bool near_cosh_pole(cplx z, cplx q) {
    return std::abs(cosh_q(z, q)) < 1e-13 * std::exp(std::abs(z.real()));
}

inline cplx tanh_q(cplx z, cplx q) {
    cplx c = cosh_q(z, q);
    if (near_cosh_pole(z, q))
        throw Error(ErrorCode::PoleAtZ, "cosh_q(z) = 0 in tanh_q");
    return sinh_q(z, q) / c;
}

inline cplx sech_q(cplx z, cplx q) {
    cplx c = cosh_q(z, q);
    if (near_cosh_pole(z, q))
        throw Error(ErrorCode::PoleAtZ, "cosh_q(z) = 0 in sech_q");
    return 1.0 / c;
}

// derivatives: cosh_q' = sinh_q, sinh_q' = cosh_q,
//              tanh_q' = q sech_q^2,  sech_q' = -sech_q tanh_q
inline cplx dtanh_q(cplx z, cplx q) {
    cplx s = sech_q(z, q);
    return q * s * s;
}
inline cplx dsech_q(cplx z, cplx q) { return -sech_q(z, q) * tanh_q(z, q); }

inline cplx eval_qhyperbolic(QHyperbolic kind, cplx z, cplx q) {
    if (q == cplx(0.0, 0.0))
        throw Error(ErrorCode::DegenerateDeformation, "q = 0 in eval_qhyperbolic");
    switch (kind) {
        case QHyperbolic::Cosh: return cosh_q(z, q);
        case QHyperbolic::Sinh: return sinh_q(z, q);
        case QHyperbolic::Tanh: return tanh_q(z, q);
        case QHyperbolic::Sech: return sech_q(z, q);
    }
    return {};
}

namespace detail {
// Principal complex arctan; the real axis is handled by std::atan so sweeps in
// real z stay continuous (no excursions across the cuts at +/- i).
inline cplx arctan(cplx w) {
    if (std::abs(w - cplx(0.0, 1.0)) < 1e-14 || std::abs(w + cplx(0.0, 1.0)) < 1e-14)
        throw Error(ErrorCode::BranchPoint, "arctan argument at a branch point +/- i");
    if (w.imag() == 0.0) return cplx(std::atan(w.real()), 0.0);
    return std::atan(w);
}
}  // namespace detail

/// Phase arguments of the closed-form eigenfunctions:
/// arctan(tanh_q(z/2)) and arctan(sinh_q z).
inline cplx phase_helper(PhaseHelper kind, cplx z, cplx q) {
    if (q == cplx(0.0, 0.0))
        throw Error(ErrorCode::DegenerateDeformation, "q = 0 in phase_helper");
    switch (kind) {
        case PhaseHelper::ArctanTanhHalf: return detail::arctan(tanh_q(0.5 * z, q));
        case PhaseHelper::ArctanSinh: return detail::arctan(sinh_q(z, q));
    }
    return {};
}

}  // namespace dds

#endif
