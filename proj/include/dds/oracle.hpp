#ifndef DDS_ORACLE_HPP
#define DDS_ORACLE_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "dds/grid.hpp"

// Finite-difference oracle for -phi'' + U(z) phi = E^2 phi with complex U:
// three-point Laplacian, Dirichlet walls, dense complex eigensolution.
// Eigenvalues come from a dense complex Schur decomposition; eigenvectors from
// shifted inverse iteration on the tridiagonal matrix. Real U takes the
// self-adjoint path, which keeps its eigenvalues exactly real.

namespace dds {

struct EigenPair {
    cplx value;
    VectorXcd vector;
};

struct BoundState {
    cplx value;
    VectorXcd vector;
    double boundary_leak = 0.0;  // max wall amplitude / max amplitude
    double localization = 0.0;   // rms width about the grid center
    bool defective_cluster = false;  // merged from a split defective pair
    int cluster_size = 1;
};

namespace detail {

/// Thomas solve of (T - sigma) x = b for the tridiagonal FD matrix with
/// constant off-diagonal ofd and diagonal diag[i] - sigma.
inline VectorXcd tridiag_shifted_solve(const VectorXcd& diag, cplx ofd, cplx sigma,
                                       VectorXcd b) {
    const int n = static_cast<int>(diag.size());
    VectorXcd c(n), d(n);
    cplx piv = diag[0] - sigma;
    if (std::abs(piv) < 1e-300) piv = cplx(1e-300, 0.0);
    c[0] = ofd / piv;
    d[0] = b[0] / piv;
    for (int i = 1; i < n; ++i) {
        piv = (diag[i] - sigma) - ofd * c[i - 1];
        if (std::abs(piv) < 1e-300) piv = cplx(1e-300, 0.0);
        c[i] = ofd / piv;
        d[i] = (b[i] - ofd * d[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
    return d;
}

inline VectorXcd inverse_iteration(const VectorXcd& diag, cplx ofd, cplx lambda,
                                   std::mt19937& rng) {
    const int n = static_cast<int>(diag.size());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(u(rng), u(rng));
    v /= v.norm();
    cplx sigma = lambda + cplx(1e-11, 1e-11);  // keep the shift off the eigenvalue
    for (int it = 0; it < 4; ++it) {
        v = tridiag_shifted_solve(diag, ofd, sigma, v);
        v /= v.norm();
    }
    return v;
}

}  // namespace detail

/// Dense eigensolution of the three-point discretization. Eigenpairs are
/// sorted by real part.
inline std::vector<EigenPair> solve_spectrum(const std::function<cplx(double)>& u,
                                             const GridSpec& grid) {
    grid.validate();
    const int n = grid.n_points;
    const double h = grid.h();
    VectorXd z = grid.points();

    VectorXcd uv(n);
    bool real_u = true;
    for (int i = 0; i < n; ++i) {
        uv[i] = u(z[i]);
        if (!std::isfinite(uv[i].real()) || !std::isfinite(uv[i].imag()))
            throw Error(ErrorCode::PoleOnGrid, "potential not finite on the grid");
        if (uv[i].imag() != 0.0) real_u = false;
    }
    const cplx ofd(-1.0 / (h * h), 0.0);
    VectorXcd diag = uv.array() + 2.0 / (h * h);

    std::vector<EigenPair> out;
    out.reserve(n);
    if (real_u) {
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            H(i, i) = diag[i].real();
            if (i + 1 < n) H(i, i + 1) = H(i + 1, i) = ofd.real();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::SolverFailure, "self-adjoint eigensolver failed");
        for (int i = 0; i < n; ++i)
            out.push_back({cplx(es.eigenvalues()[i], 0.0), es.eigenvectors().col(i).cast<cplx>()});
        return out;
    }

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        H(i, i) = diag[i];
        if (i + 1 < n) H(i, i + 1) = H(i + 1, i) = ofd;
    }
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(H, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw Error(ErrorCode::SolverFailure, "complex Schur did not converge");

    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = schur.matrixT()(i, i);
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) { return a.real() < b.real(); });

    std::mt19937 rng(0x5eed);
    for (int i = 0; i < n; ++i)
        out.push_back({vals[i], detail::inverse_iteration(diag, ofd, vals[i], rng)});
    return out;
}

struct SelectOptions {
    double im_tol = 1e-6;
    double leak_tol = 1e-6;
    double merge_gap = 0.0;        // 0 disables defective-cluster merging
    double merge_overlap = 0.9;    // |cos angle| threshold for merging
    double e2_max = 1e300;         // ignore eigenvalues above this real part
};

/// Keep eigenpairs that look like bound states: small wall amplitude and
/// imaginary part within tolerance. Box artifacts (extended states) leak.
inline std::vector<BoundState> select_bound(const std::vector<EigenPair>& pairs,
                                            const GridSpec& grid, double im_tol,
                                            double leak_tol, double e2_max = 1e300) {
    std::vector<BoundState> out;
    VectorXd z = grid.points();
    for (const auto& p : pairs) {
        if (p.value.real() > e2_max) continue;
        double m = p.vector.cwiseAbs().maxCoeff();
        if (m <= 0.0) continue;
        double leak = std::max(std::abs(p.vector[0]), std::abs(p.vector[p.vector.size() - 1])) / m;
        if (leak > leak_tol) continue;
        if (std::abs(p.value.imag()) > im_tol * std::max(1.0, std::abs(p.value.real()))) continue;
        BoundState b;
        b.value = p.value;
        b.vector = p.vector;
        b.boundary_leak = leak;
        double wsum = 0.0, xsum = 0.0, x2sum = 0.0;
        for (int i = 0; i < z.size(); ++i) {
            double w = std::norm(p.vector[i]);
            wsum += w;
            xsum += w * (z[i] - grid.center);
            x2sum += w * (z[i] - grid.center) * (z[i] - grid.center);
        }
        double mean = xsum / wsum;
        b.localization = std::sqrt(std::max(0.0, x2sum / wsum - mean * mean));
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) { return a.value.real() < b.value.real(); });
    return out;
}

/// Exactly coincident levels of the continuum problem appear in the discrete
/// spectrum as close pairs with nearly parallel eigenvectors (the defective
/// signature); the cluster mean recovers the level to discretization order.
inline std::vector<BoundState> merge_defective_clusters(std::vector<BoundState> states,
                                                        double gap, double min_overlap) {
    if (gap <= 0.0 || states.size() < 2) return states;
    std::vector<BoundState> out;
    size_t i = 0;
    while (i < states.size()) {
        size_t j = i + 1;
        cplx acc = states[i].value;
        int count = 1;
        while (j < states.size() && std::abs(states[j].value - states[i].value) < gap) {
            double ov = std::abs(states[i].vector.dot(states[j].vector)) /
                        (states[i].vector.norm() * states[j].vector.norm());
            if (ov < min_overlap) break;
            acc += states[j].value;
            ++count;
            ++j;
        }
        BoundState merged = states[i];
        merged.value = acc / static_cast<double>(count);
        merged.defective_cluster = count > 1;
        merged.cluster_size = count;
        out.push_back(std::move(merged));
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------------------
// spectra comparison
// ---------------------------------------------------------------------------

struct AnalyticLevel {
    int n;
    cplx e_squared;
    cplx e;
};

struct NumericLevel {
    cplx value;
    double localization;
    double boundary_leak;
    bool defective_cluster = false;
};

struct LevelMatch {
    int n;                 // analytic index
    int numeric_index;     // -1 when unmatched
    double rel_residual;   // |dE^2| / max(1, |E^2_analytic|)
    cplx richardson{};     // extrapolated numeric value when two grids ran
    double improvement = 0.0;  // coarse/fine residual ratio
};

struct SpectrumReport {
    std::vector<AnalyticLevel> analytic;
    std::vector<NumericLevel> numeric;
    std::vector<LevelMatch> matches;
    bool all_matched = false;
    double rel_tol = 1e-4;
};

/// Greedy nearest matching in E^2, injective; unmatched analytic levels are
/// failures (recorded, not thrown).
inline SpectrumReport compare_spectra(const std::vector<AnalyticLevel>& analytic,
                                      const std::vector<NumericLevel>& numeric,
                                      double rel_tol) {
    SpectrumReport rep;
    rep.analytic = analytic;
    rep.numeric = numeric;
    rep.rel_tol = rel_tol;
    std::vector<bool> used(numeric.size(), false);
    rep.all_matched = true;
    for (const auto& a : analytic) {
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < numeric.size(); ++i) {
            if (used[i]) continue;
            double d = std::abs(numeric[i].value - a.e_squared);
            if (d < bd) { bd = d; best = static_cast<int>(i); }
        }
        LevelMatch m;
        m.n = a.n;
        m.numeric_index = best;
        m.rel_residual = best >= 0 ? bd / std::max(1.0, std::abs(a.e_squared)) : 1e300;
        if (best >= 0 && m.rel_residual <= rel_tol) {
            used[best] = true;
        } else {
            m.numeric_index = -1;
            rep.all_matched = false;
        }
        rep.matches.push_back(m);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// two-grid pipeline: bound spectra with Richardson extrapolation
// ---------------------------------------------------------------------------

struct TwoGridSpectrum {
    std::vector<BoundState> fine;      // merged bound states at n_points
    std::vector<BoundState> coarse;    // merged bound states at n_points/2
    std::vector<cplx> richardson;      // (4 fine - coarse)/3, paired by value
    std::vector<int> pair_of_fine;     // index into coarse, -1 if unpaired
};

inline std::vector<BoundState> bound_spectrum(const std::function<cplx(double)>& u,
                                              const GridSpec& grid, const SelectOptions& opt) {
    auto pairs = solve_spectrum(u, grid);
    auto sel = select_bound(pairs, grid, opt.im_tol, opt.leak_tol, opt.e2_max);
    return merge_defective_clusters(std::move(sel), opt.merge_gap, opt.merge_overlap);
}

/// Runs the oracle at n and n/2 and Richardson-extrapolates each paired
/// level; the scheme is second order, so halving h shrinks the error by ~4
/// and (4 E_fine - E_coarse)/3 removes the leading term.
inline TwoGridSpectrum two_grid_spectrum(const std::function<cplx(double)>& u,
                                         const GridSpec& grid, const SelectOptions& opt) {
    TwoGridSpectrum out;
    out.fine = bound_spectrum(u, grid, opt);
    GridSpec half = grid;
    half.n_points = grid.n_points / 2;
    SelectOptions copt = opt;
    copt.merge_gap = opt.merge_gap * 2.0;  // splits scale like h
    out.coarse = bound_spectrum(u, half, copt);

    std::vector<bool> used(out.coarse.size(), false);
    for (const auto& f : out.fine) {
        int best = -1;
        double bd = 1e300;
        for (size_t i = 0; i < out.coarse.size(); ++i) {
            if (used[i]) continue;
            double d = std::abs(out.coarse[i].value - f.value);
            if (d < bd) { bd = d; best = static_cast<int>(i); }
        }
        if (best >= 0 && bd < 0.25 * std::max(1.0, std::abs(f.value))) {
            used[best] = true;
            out.pair_of_fine.push_back(best);
            out.richardson.push_back((4.0 * f.value - out.coarse[best].value) / 3.0);
        } else {
            out.pair_of_fine.push_back(-1);
            out.richardson.push_back(f.value);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// spectral refinement (for residual-grade eigenfunctions)
// ---------------------------------------------------------------------------

/// Inverse iteration with a dense Fourier-spectral Hamiltonian; returns an
/// eigenpair accurate to spectral precision for analytic decaying states.
/// Intended for residual checks where O(h^2) vectors are not enough.
inline EigenPair refine_eigenpair_spectral(const std::function<cplx(double)>& u,
                                           cplx e2_guess, const GridSpec& grid,
                                           int iterations = 6) {
    const int n = grid.n_points;
    VectorXd z = grid.points();
    Eigen::MatrixXd D2 = spectral_d2_matrix(n, grid.h());
    Eigen::MatrixXcd H = (-D2).cast<cplx>();
    for (int i = 0; i < n; ++i) H(i, i) += u(z[i]);

    std::mt19937 rng(0xacc);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(dist(rng), dist(rng));
    v /= v.norm();

    cplx sigma = e2_guess;
    for (int it = 0; it < iterations; ++it) {
        Eigen::MatrixXcd A = H - sigma * Eigen::MatrixXcd::Identity(n, n);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        VectorXcd w = lu.solve(v);
        v = w / w.norm();
        // Rayleigh-style update with the complex bilinear pairing
        cplx num = v.transpose() * (H * v);
        cplx den = v.transpose() * v;
        if (std::abs(den) > 1e-14) sigma = num / den;
    }
    return EigenPair{sigma, v};
}

}  // namespace dds

#endif
