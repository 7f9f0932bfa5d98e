#pragma once

// Schur functions represented as rational data: finite Blaschke products,
// the Schur algorithm, Wall pairs and the Caratheodory transform.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cmvkit/numkernel.hpp"

namespace cmvkit {

/// Raised by schur_step when f(0) is (numerically) unimodular, i.e. the
/// terminal parameter of a finite Blaschke product has been reached.
class TerminalParameter : public NumericError
{
public:
    TerminalParameter(Complex value)
        : NumericError("schur_step: |f(0)| reached the unit circle"), value_(value)
    {
    }
    Complex value() const { return value_; }

private:
    Complex value_;
};

/// Schur parameters gamma_0..gamma_{N-1} in the disk, optionally closed by a
/// unimodular terminal gamma_N. Without a terminal the sequence describes a
/// leading section only.
struct SchurParams
{
    std::vector<Complex> interior;
    std::optional<Complex> terminal;

    int size() const { return static_cast<int>(interior.size()); }
    bool is_finite() const { return terminal.has_value(); }

    /// gamma_j for j <= N (j == N returns the terminal).
    Complex operator[](int j) const;

    /// rho_j = sqrt(1 - |gamma_j|^2); zero for the terminal.
    double rho(int j) const;

    /// interior followed by the terminal, if present.
    std::vector<Complex> all() const;

    /// Throws ArgumentError unless every interior parameter has modulus
    /// <= 1 - tol.roots and the terminal is unimodular within tol.structural.
    void validate(const Tolerances& tol = {}) const;

    /// Parameters multiplied entry-wise by a unimodular factor.
    SchurParams rotated(double angle) const;
};

/// Max entry-wise gap between two parameter sequences; infinity when the
/// shapes differ.
double param_distance(const SchurParams& a, const SchurParams& b);

/// e^{i phase} prod (z - z_k) / (1 - conj(z_k) z), stored by zeros.
struct BlaschkeProduct
{
    double phase = 0.0;
    std::vector<Complex> zeros;

    int order() const { return static_cast<int>(zeros.size()); }
    Complex unimodular() const { return std::polar(1.0, phase); }

    Complex operator()(Complex z) const;

    /// Logarithmic derivative b'(z)/b(z).
    Complex log_derivative(Complex z) const;

    /// prod (z - z_k).
    Poly monic() const;

    void validate(const Tolerances& tol = {}) const;
};

/// Schur function num/den. A nonnegative `order` marks an exact Blaschke
/// product of that order with den proportional to star(num, order).
struct RationalSchur
{
    Poly num;
    Poly den;
    int order = -1;

    Complex operator()(Complex z) const { return num(z) / den(z); }

    static RationalSchur from_blaschke(const BlaschkeProduct& b);

    /// c * b for a Blaschke product b; not inner when |c| < 1.
    static RationalSchur scaled_blaschke(Complex c, const BlaschkeProduct& b);

    static RationalSchur constant(Complex c) { return {Poly::constant(c), Poly::constant(1.0), -1}; }
};

/// One step of the Schur algorithm: gamma = f(0), f_next = (f - gamma)/(z(1 - conj(gamma) f)).
std::pair<Complex, RationalSchur> schur_step(const RationalSchur& f, const Tolerances& tol = {});

/// Parameters of a finite Blaschke product by N Schur steps; cross-checked
/// against the Khrushchev route (see opuc.hpp).
SchurParams schur_params_of_blaschke(const BlaschkeProduct& b, const Tolerances& tol = {});

/// Runs the Schur algorithm on a general rational Schur function until either
/// a terminal parameter appears, |gamma| falls below `cutoff`, or `max_steps`
/// parameters were produced.
SchurParams schur_params_of_rational(const RationalSchur& f, int max_steps, double cutoff,
                                     const Tolerances& tol = {});

/// 2x2 polynomial matrix W = Q_{gamma_0} ... Q_{gamma_n} in the layout
/// [[z B*, A], [z A*, B]], normalized so B(0) = 1.
struct WallPair
{
    Poly A;
    Poly B;
    int n = 0;
    /// Entries of W after normalization, row-major.
    Poly w00, w01, w10, w11;
    /// B*B - A*A = c z^n with this c (equal to prod rho_j^2 under B(0) = 1).
    double determinant_constant = 1.0;

    /// f = (A + z B* s) / (B + z A* s).
    Complex apply(Complex z, Complex s) const;
};

WallPair wall_pair(std::span<const Complex> gammas, const Tolerances& tol = {});

/// Blaschke product with the given finite parameter list, via the Wall pair
/// and the constant Schur function s = gamma_N.
BlaschkeProduct blaschke_from_schur_params(const SchurParams& p, const Tolerances& tol = {});

/// Same function as num/den straight from the Wall pair, without root finding.
RationalSchur rational_from_schur_params(const SchurParams& p, const Tolerances& tol = {});

/// F = (1 + z f) / (1 - z f).
Complex caratheodory_from_schur(Complex f, Complex z);

/// f = (F - 1) / (z (F + 1)); z must be nonzero.
Complex schur_from_caratheodory(Complex F, Complex z);

struct ProductCheck
{
    double product  = 1.0; ///< prod (1 - |gamma_n|^2)
    double integral = 1.0; ///< exp of the circle mean of ln(1 - |f|^2)
    double gap      = 0.0; ///< |product - integral| / max(product, integral)
    bool inner      = false;
    int samples     = 0;
};

/// Compares the parameter product with the boundary integral of ln(1 - |f|^2)
/// sampled uniformly at `samples` points of the circle.
ProductCheck param_product_check(const SchurParams& p, const RationalSchur& f, int samples = 2048);

/// `count` uniformly spaced points r e^{i(2 pi k / count + offset)}.
std::vector<Complex> circle_samples(int count, double radius = 1.0, double offset = 0.0);

} // namespace cmvkit
