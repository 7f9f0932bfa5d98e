#pragma once

// CMV matrices built from Schur parameters, their truncations, block form,
// LM factorization and the structural identities tying them together.

#include <vector>

#include "cmvkit/numkernel.hpp"
#include "cmvkit/schurfun.hpp"

namespace cmvkit {

/// (N+1)x(N+1) CMV matrix of N interior parameters and a unimodular terminal.
struct CmvMatrix
{
    SchurParams params;
    Matrix dense;

    int dimension() const { return static_cast<int>(dense.rows()); }
};

/// Pieces split off when the first row and column are deleted.
struct Colligation
{
    Complex S{};    ///< corner entry conj(alpha_0)
    Vector G;       ///< remainder of the first row
    Vector F;       ///< remainder of the first column
};

/// CMV matrix with its first row and column removed. `alternate` marks the
/// transposed form obtained from the alternate CMV matrix.
struct TruncatedCmv
{
    SchurParams params;
    Matrix dense;
    Colligation colligation;
    bool alternate = false;

    int dimension() const { return static_cast<int>(dense.rows()); }
};

/// Entry-wise assembly from the parity formulas.
CmvMatrix assemble_cmv(const SchurParams& p, const Tolerances& tol = {});

/// Leading dim x dim block of the semi-infinite CMV matrix whose first
/// parameters are `alphas` (missing ones read as zero).
Matrix cmv_section(std::span<const Complex> alphas, int dim);

struct LmFactors
{
    Matrix L;
    Matrix M;
};

/// L = Psi(a0) + Psi(a2) + ..., M = 1 + Psi(a1) + Psi(a3) + ..., with the
/// unimodular terminal contributing the 1x1 block (conj(a_N)).
LmFactors lm_factors(const SchurParams& p, const Tolerances& tol = {});

/// Alternate CMV matrix M L.
Matrix alternate_cmv(const SchurParams& p, const Tolerances& tol = {});

/// Deletes the first row and column; throws ArgumentError for dimension 1.
TruncatedCmv truncate(const CmvMatrix& c);

/// Truncated matrix of a parameter list, optionally in alternate (transposed) form.
TruncatedCmv truncated_cmv(const SchurParams& p, bool alternate = false, const Tolerances& tol = {});

/// 2x2 block tridiagonal view: diag[n] sits at block (n, n), lower[n] at
/// (n+1, n), upper[n] at (n, n+1). Block sizes follow `sizes`.
struct BlockTridiagonal
{
    std::vector<int> sizes;
    std::vector<Matrix> diag;
    std::vector<Matrix> lower;
    std::vector<Matrix> upper;
};

/// Blocks copied out of a dense matrix using the partition 1, 2, 2, ... of
/// the parent (offset = 0) or 2, 2, ... of a truncation (offset = 1).
BlockTridiagonal blocks(const Matrix& m, bool truncated_layout);
BlockTridiagonal blocks(const TruncatedCmv& t);

/// Blocks evaluated directly from the closed-form block formulas.
BlockTridiagonal block_formulas(const SchurParams& p, bool truncated_layout, int dim);

Matrix reassemble(const BlockTridiagonal& b);

struct RecoveredParams
{
    SchurParams params;
    bool unique     = true;  ///< false for the 1x1 normal form
    double residual = 0.0;   ///< max entry gap after reassembly
};

/// Entry chasing on a truncated CMV matrix. A 1x1 input only fixes
/// conj(alpha_1) alpha_0; the normal form alpha_1 = 1, alpha_0 = -value is
/// returned and flagged non-unique. Throws ConsistencyError when the
/// reassembled matrix misses the input by more than tol.roots.
RecoveredParams params_from_truncated(const Matrix& m, const Tolerances& tol = {});

/// diag(e^{it}, 1, e^{it}, 1, ...) of size n.
Matrix rotation_diag(int n, double angle);

struct RotationResult
{
    TruncatedCmv t;
    double residual = 0.0; ///< max entry gap of V T V^{-1} against the rebuilt matrix
};

/// Matrix of the rotated parameters e^{it} alpha_n, checked against V T V^{-1}.
RotationResult rotate_conjugate(const TruncatedCmv& t, double angle, const Tolerances& tol = {});

struct DefectData
{
    double rho0 = 0.0;
    Vector left;   ///< delta_1
    Vector right;  ///< alpha_1 delta_1 + rho_1 delta_2
    double left_gram_residual  = 0.0; ///< |(I - T T^*) - rho0^2 left left^*|
    double right_gram_residual = 0.0; ///< |(I - T^* T) - rho0^2 right right^*|
    double left_root_residual  = 0.0; ///< |D_{T^*} - rho0 left left^*|
    double right_root_residual = 0.0; ///< |D_T - rho0 right right^*|
    double shift_residual      = 0.0; ///< |T right + alpha_0 delta_1|
    double left_singular       = 0.0; ///< top singular value of I - T T^*
    double right_singular      = 0.0;
};

/// Rank-one defect structure; throws ConsistencyError if either defect is
/// not numerically rank one.
DefectData defect_data(const TruncatedCmv& t, const Tolerances& tol = {});

/// n x n leading section of the Livsic pattern with t(1,2) = -r e^{i phi}.
TruncatedCmv livsic_matrix(double r, double phi, int n);

/// Deletes the first k rows and columns. The result carries the parameter
/// tail alpha_k, ... and flips to the alternate form for odd k.
TruncatedCmv submatrix_k(const TruncatedCmv& t, int k, const Tolerances& tol = {});

/// Max entry-wise gap.
double max_gap(const Matrix& a, const Matrix& b);

} // namespace cmvkit
