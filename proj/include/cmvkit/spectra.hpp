#pragma once

// Direct spectral data of truncated CMV matrices: eigenvalues, the
// characteristic function through the parent resolvent, and the
// characteristic-polynomial identity.

#include <vector>

#include "cmvkit/cmv.hpp"

namespace cmvkit {

struct SpectrumResult
{
    std::vector<Complex> eigenvalues;
    std::vector<double> residuals;
    std::vector<Cluster> clustered;   ///< grouped within tol.roots
    bool all_in_disk    = true;       ///< every |lambda| <= 1 + tol.roots
    double max_modulus  = 0.0;
};

SpectrumResult spectrum(const Matrix& m, const Tolerances& tol = {});
SpectrumResult spectrum(const TruncatedCmv& t, const Tolerances& tol = {});

/// f(z) from the resolvent of the parent CMV matrix: with x = (C - z)^{-1} delta_0,
/// F(z) = 1 + 2 z x_0 and f = (F - 1)/(z (F + 1)) = x_0 / (1 + z x_0).
/// z = 0 returns alpha_0 directly.
Complex charfun_schur(const CmvMatrix& c, Complex z, const Tolerances& tol = {});

/// Characteristic function of a truncated matrix through its rebuilt parent.
Complex charfun_schur(const TruncatedCmv& t, Complex z, const Tolerances& tol = {});

/// det(z I - H) for an upper Hessenberg H by the row recursion.
Poly hessenberg_charpoly(const Matrix& h);

/// det(z I - m) via unitary reduction to Hessenberg form.
Poly charpoly(const Matrix& m);

struct CharpolyReport
{
    int n = 0;
    Poly determinant; ///< det(z I_n - C^{(n)})
    Poly phi;         ///< Phi_n from the Szego recursion
    double gap = 0.0; ///< max coefficient gap
};

CharpolyReport charpoly_check(const CmvMatrix& c, int n);

struct IterateReport
{
    int k = 0;
    int samples = 0;
    double gap = 0.0; ///< max |f_sub(z) - f_k(z)| over the sample points
};

/// Compares the characteristic function of submatrix_k(t, k) with the k-th
/// Schur iterate of the characteristic function of t.
IterateReport schur_iterate_check(const TruncatedCmv& t, int k, int sample_count,
                                  const Tolerances& tol = {});

/// Points used by the sampled checks: a ring of radius 0.6 with a small offset.
std::vector<Complex> interior_samples(int count);

} // namespace cmvkit
