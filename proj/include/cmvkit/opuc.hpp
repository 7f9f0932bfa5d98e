#pragma once

// Monic orthogonal polynomials on the unit circle: Szego recursions in both
// directions, Verblunsky coefficients, prescribed-zero extensions and finitely
// supported measures.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cmvkit/numkernel.hpp"
#include "cmvkit/schurfun.hpp"

namespace cmvkit {

/// Phi_0 .. Phi_n together with alpha_0 .. alpha_{n-1}.
struct MonicOpucChain
{
    std::vector<Poly> polys{Poly::constant(1.0)};
    std::vector<Complex> alphas;

    int degree() const { return static_cast<int>(alphas.size()); }
    const Poly& last() const { return polys.back(); }
};

/// Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*.
MonicOpucChain szego_up(MonicOpucChain chain, Complex alpha);

/// Chain generated by a full coefficient list.
MonicOpucChain szego_chain(std::span<const Complex> alphas);

/// Single Szego step on a bare polynomial of degree n.
Poly szego_step(const Poly& phi, int n, Complex alpha);

/// Inverse step: returns (alpha, Phi_prev) with
/// z Phi_prev = rho^{-2} (Phi + conj(alpha) Phi^*).
std::pair<Complex, Poly> szego_down(const Poly& phi, const Tolerances& tol = {},
                                    bool check_roots = false);

/// alpha_0 .. alpha_{n-1} of a monic polynomial with zeros in the disk.
std::vector<Complex> verblunsky_from_monic(const Poly& p, const Tolerances& tol = {});

/// Schur parameters of P / P^* read off the Verblunsky coefficients of P:
/// {-conj(beta_{n-1}), ..., -conj(beta_0); 1}.
SchurParams khrushchev_params(const Poly& p, const Tolerances& tol = {});

/// Extension of P by one Verblunsky coefficient so that the next polynomial
/// vanishes at z1.
std::pair<Complex, Poly> extend_one_zero(const Poly& p, Complex z1, const Tolerances& tol = {});

struct ExtensionOptions
{
    std::uint64_t seed = 0x5eed;
    int random_starts  = 32;
    int max_iterations = 100;
};

struct ExtensionResult
{
    std::vector<Complex> alphas; ///< the m new coefficients
    Poly q;                      ///< monic extension of degree n + m
    double residual  = 0.0;      ///< max interpolation residual
    double condition = 0.0;      ///< 2-norm condition number of the final Jacobian
    int start        = 0;        ///< 0 for the zero start, k for the k-th random start
    int iterations   = 0;
};

/// Extension by m >= 2 coefficients so that Q_{n+m} vanishes on zs counting
/// multiplicity; damped Newton with a deterministic multi-start. Throws
/// NumericError when no start converges. m == 1 is routed to extend_one_zero.
ExtensionResult extend_zeros_numeric(const Poly& p, std::span<const Complex> zs,
                                     const ExtensionOptions& opts = {}, const Tolerances& tol = {});

struct TttConstruction
{
    BlaschkeProduct b;
    SchurParams params;           ///< full parameter list of b
    MonicOpucChain chain;         ///< chain of Phi's; b = gamma Phi / Phi^*
    ExtensionResult extension;    ///< empty for m == 0
};

/// Finite Blaschke product of order n + m whose parameters end with
/// (alphas, gamma) and which vanishes on zs counting multiplicity.
TttConstruction theorem_ttt_construct(std::span<const Complex> alphas, std::span<const Complex> zs,
                                      Complex gamma, const ExtensionOptions& opts = {},
                                      const Tolerances& tol = {});

BlaschkeProduct theorem_ttt_build(std::span<const Complex> alphas, std::span<const Complex> zs,
                                  Complex gamma, const ExtensionOptions& opts = {},
                                  const Tolerances& tol = {});

/// Probability measure with finitely many atoms on the circle.
struct TrivialMeasure
{
    std::vector<Complex> support;
    std::vector<double> weights;

    int size() const { return static_cast<int>(support.size()); }
    void validate(const Tolerances& tol = {}) const;
};

/// Measure whose Schur function is b, supported on the N + 1 solutions of z b(z) = 1.
TrivialMeasure measure_from_blaschke(const BlaschkeProduct& b, const Tolerances& tol = {});

/// beta_n = sum mu_k zeta_k^{-n}.
Complex moments(const TrivialMeasure& mu, int n);

/// F(z) = sum mu_k (zeta_k + z) / (zeta_k - z).
Complex caratheodory_eval(const TrivialMeasure& mu, Complex z);

struct MeasureOpuc
{
    std::vector<Complex> alphas;   ///< alpha_0 .. alpha_{N-2}
    std::vector<Poly> polys;       ///< Phi_0 .. Phi_{N-1}
    std::vector<double> norms;     ///< ||Phi_n|| in L^2(mu)
    double norm_gap = 0.0;         ///< max | ||Phi_n|| - prod rho_j |
};

/// Gram-Schmidt of 1, z, ..., z^{N-1} in L^2(mu).
MeasureOpuc opuc_of_measure(const TrivialMeasure& mu, const Tolerances& tol = {});

std::vector<Complex> verblunsky_from_measure(const TrivialMeasure& mu, const Tolerances& tol = {});

} // namespace cmvkit
