#pragma once

// Inverse spectral problems for truncated CMV matrices: full spectrum,
// spectrum plus leading parameters, spectrum plus trailing parameters.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmvkit/cmv.hpp"
#include "cmvkit/opuc.hpp"
#include "cmvkit/spectra.hpp"

namespace cmvkit {

/// Worst distance between a computed spectrum and a prescribed multiset.
/// A prescribed point of multiplicity l is compared through the centroid of
/// the l nearest eigenvalues, which is stable where the individual
/// eigenvalues split like eps^{1/l}.
double spectrum_gap(std::span<const Complex> eigenvalues, std::span<const Cluster> prescribed);

struct Reconstruction
{
    TruncatedCmv t;
    double phase         = 0.0;
    double spectrum_gap  = 0.0;
    std::vector<std::string> warnings;
};

/// Matrix whose eigenvalues are zs (counting multiplicity). The parameters
/// come from the monic polynomial with those zeros, rotated by e^{i phase};
/// other phases give unitarily equivalent matrices.
Reconstruction reconstruct_from_spectrum(std::span<const Complex> zs, double phase = 0.0,
                                         const Tolerances& tol = {});

struct MixedFirstData
{
    std::vector<Cluster> eigen;          ///< distinct nodes with multiplicities
    std::vector<Complex> first_params;   ///< alpha_0 .. alpha_{p-1}
    int n = 0;                           ///< target dimension

    int eigen_count() const;
};

struct MixedLastData
{
    std::vector<Complex> eigen;  ///< z_1 .. z_m, repeated by multiplicity
    SchurParams last_params;     ///< alpha_m .. alpha_{N-1} and the terminal
    int n = 0;
};

struct NoSolution
{
    std::string reason;
    std::vector<std::pair<std::string, double>> diagnostics;
};

/// Infinitely many solutions. Members are produced by family_member from
/// `free_interior` extra parameters in the disk and, when `free_terminal`
/// is set, a unimodular terminal.
struct FamilyDescriptor
{
    MixedFirstData data;
    int zero_multiplicity = 0;
    int free_interior     = 0;
    bool free_terminal    = false;
    std::string description;
};

struct MixedSolution
{
    TruncatedCmv t;
    double spectrum_gap = 0.0;
    double param_gap    = 0.0;
    double pick_floor   = 0.0;   ///< smallest Pick eigenvalue (0 when no Pick step ran)
    double pick_gap     = 0.0;   ///< second smallest Pick eigenvalue
    double node_residual = 0.0;  ///< max |f(z_k)| over the nonzero nodes
};

using MixedFirstResult = std::variant<MixedSolution, NoSolution, FamilyDescriptor>;

/// Nonzero eigenvalues only; |first_params| must equal N - r + 1.
MixedFirstResult mixed_first(const MixedFirstData& d, const Tolerances& tol = {});

/// Zero among the eigenvalues. Zero parameters in front are stripped and the
/// reduced problem is solved; the leading-parameter count may exceed
/// N - r + 1 here because zero eigenvalues are carried by those parameters.
MixedFirstResult mixed_first_zero_reduction(const MixedFirstData& d, const Tolerances& tol = {});

/// Routes to one of the two above.
MixedFirstResult solve_mixed_first(const MixedFirstData& d, const Tolerances& tol = {});

/// One member of a solution family.
MixedSolution family_member(const FamilyDescriptor& f, std::span<const Complex> free_interior,
                            Complex terminal, const Tolerances& tol = {});

struct MixedLastSolution
{
    TruncatedCmv t;
    double spectrum_gap = 0.0;     ///< prescribed eigenvalues against the spectrum
    double param_gap    = 0.0;     ///< recovered trailing parameters against the data
    double newton_residual = 0.0;
    double newton_condition = 0.0;
    int newton_start = 0;
};

/// Existence construction; uniqueness is not claimed.
MixedLastSolution mixed_last(const MixedLastData& d, const ExtensionOptions& opts = {},
                             const Tolerances& tol = {});

struct BlaschkeReport
{
    double partial_sum = 0.0;
    std::vector<double> partial_sums;
    bool nondecreasing = true;
    std::string note;
};

/// Partial sums of sum (1 - |z_n|) over a finite prefix.
BlaschkeReport blaschke_condition(std::span<const Complex> zs);

} // namespace cmvkit
