#include "cmvkit/schurfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmvkit/opuc.hpp"

namespace cmvkit {

Complex SchurParams::operator[](int j) const
{
    if (j >= 0 && j < size())
        return interior[static_cast<std::size_t>(j)];
    if (j == size() && terminal)
        return *terminal;
    throw ArgumentError("SchurParams: index " + std::to_string(j) + " out of range");
}

double SchurParams::rho(int j) const
{
    if (j == size() && terminal)
        return 0.0;
    const double a = std::abs((*this)[j]);
    return std::sqrt(std::max(0.0, (1.0 - a) * (1.0 + a)));
}

std::vector<Complex> SchurParams::all() const
{
    std::vector<Complex> v = interior;
    if (terminal)
        v.push_back(*terminal);
    return v;
}

void SchurParams::validate(const Tolerances& tol) const
{
    for (std::size_t j = 0; j < interior.size(); ++j) {
        if (!std::isfinite(interior[j].real()) || !std::isfinite(interior[j].imag()))
            throw ArgumentError("Schur parameter " + std::to_string(j) + " is not finite");
        if (std::abs(interior[j]) > 1.0 - tol.roots)
            throw ArgumentError("Schur parameter " + std::to_string(j) +
                                " is not strictly inside the unit disk");
    }
    if (terminal && std::abs(std::abs(*terminal) - 1.0) > tol.structural)
        throw ArgumentError("terminal Schur parameter is not unimodular");
}

SchurParams SchurParams::rotated(double angle) const
{
    const Complex u = std::polar(1.0, angle);
    SchurParams out = *this;
    for (auto& a : out.interior)
        a *= u;
    if (out.terminal)
        *out.terminal *= u;
    return out;
}

double param_distance(const SchurParams& a, const SchurParams& b)
{
    if (a.size() != b.size() || a.is_finite() != b.is_finite())
        return std::numeric_limits<double>::infinity();
    double gap = 0.0;
    const auto va = a.all(), vb = b.all();
    for (std::size_t j = 0; j < va.size(); ++j)
        gap = std::max(gap, std::abs(va[j] - vb[j]));
    return gap;
}

Complex BlaschkeProduct::operator()(Complex z) const
{
    Complex v = unimodular();
    for (const auto& zk : zeros)
        v *= (z - zk) / (1.0 - std::conj(zk) * z);
    return v;
}

Complex BlaschkeProduct::log_derivative(Complex z) const
{
    Complex s = 0.0;
    for (const auto& zk : zeros)
        s += (1.0 - std::norm(zk)) / ((z - zk) * (1.0 - std::conj(zk) * z));
    return s;
}

Poly BlaschkeProduct::monic() const
{
    return from_roots(zeros);
}

void BlaschkeProduct::validate(const Tolerances& tol) const
{
    if (!std::isfinite(phase))
        throw ArgumentError("Blaschke phase is not finite");
    for (const auto& z : zeros)
        if (!(std::abs(z) <= 1.0 - tol.roots))
            throw ArgumentError("Blaschke zero outside the open unit disk");
}

RationalSchur RationalSchur::from_blaschke(const BlaschkeProduct& b)
{
    const Poly p = b.monic();
    return {p * b.unimodular(), star(p, b.order()), b.order()};
}

RationalSchur RationalSchur::scaled_blaschke(Complex c, const BlaschkeProduct& b)
{
    const Poly p = b.monic();
    return {p * (c * b.unimodular()), star(p, b.order()), -1};
}

std::pair<Complex, RationalSchur> schur_step(const RationalSchur& f, const Tolerances& tol)
{
    const Complex d0 = f.den[0];
    if (d0 == Complex(0.0))
        throw ArgumentError("schur_step: denominator vanishes at the origin");
    const Complex gamma = f.num[0] / d0;
    if (std::abs(gamma) >= 1.0 - tol.roots)
        throw TerminalParameter(gamma);

    // Constant term of num - gamma den cancels exactly; shifted_down drops it.
    Poly num = (f.num - f.den * gamma).shifted_down();
    Poly den = f.den - f.num * std::conj(gamma);
    int order = -1;
    if (f.order >= 1) {
        // Leading coefficient of den - conj(gamma) num cancels for inner f.
        order = f.order - 1;
        num   = num.truncated(order);
        den   = den.truncated(order);
    }
    const Complex scale = den[0];
    return {gamma, RationalSchur{num / scale, den / scale, order}};
}

SchurParams schur_params_of_blaschke(const BlaschkeProduct& b, const Tolerances& tol)
{
    b.validate(tol);
    RationalSchur f = RationalSchur::from_blaschke(b);
    SchurParams out;
    for (int k = 0; k < b.order(); ++k) {
        auto [gamma, next] = schur_step(f, tol);
        out.interior.push_back(gamma);
        f = std::move(next);
    }
    const Complex t = f.num[0] / f.den[0];
    if (std::abs(std::abs(t) - 1.0) > tol.roots)
        throw ConsistencyError("schur_params_of_blaschke: terminal parameter is not unimodular");
    out.terminal = t / std::abs(t);

    const SchurParams dual = khrushchev_params(b.monic(), tol).rotated(b.phase);
    const double gap       = param_distance(out, dual);
    if (!(gap <= tol.roots))
        throw ConsistencyError("schur_params_of_blaschke: Schur algorithm and Khrushchev route "
                               "disagree by " + std::to_string(gap));
    return out;
}

SchurParams schur_params_of_rational(const RationalSchur& f0, int max_steps, double cutoff,
                                     const Tolerances& tol)
{
    RationalSchur f = f0;
    SchurParams out;
    for (int k = 0; k < max_steps; ++k) {
        if (f.num.max_abs() <= cutoff * f.den.max_abs())
            break;
        try {
            auto [gamma, next] = schur_step(f, tol);
            out.interior.push_back(gamma);
            f = std::move(next);
        } catch (const TerminalParameter& t) {
            out.terminal = t.value() / std::abs(t.value());
            break;
        }
    }
    return out;
}

Complex WallPair::apply(Complex z, Complex s) const
{
    const Complex bs = star(B, n)(z);
    const Complex as = star(A, n)(z);
    return (A(z) + z * bs * s) / (B(z) + z * as * s);
}

WallPair wall_pair(std::span<const Complex> gammas, const Tolerances& tol)
{
    if (gammas.empty())
        throw ArgumentError("wall_pair: need at least one parameter");
    for (const auto& g : gammas)
        if (!(std::abs(g) < 1.0))
            throw ArgumentError("wall_pair: parameter outside the open unit disk");

    const Poly z = Poly::monomial(1);
    Poly w00 = Poly::constant(1.0), w01, w10, w11 = Poly::constant(1.0);
    double rho2_product = 1.0;
    for (const auto& g : gammas) {
        const double rho2 = 1.0 - std::norm(g);
        const double r    = 1.0 / std::sqrt(rho2);
        rho2_product *= rho2;
        // Right-multiply by (1/rho) [[z, g], [z conj(g), 1]].
        Poly n00 = (w00 * z + w01 * z * std::conj(g)) * r;
        Poly n01 = (w00 * g + w01) * r;
        Poly n10 = (w10 * z + w11 * z * std::conj(g)) * r;
        Poly n11 = (w10 * g + w11) * r;
        w00 = std::move(n00);
        w01 = std::move(n01);
        w10 = std::move(n10);
        w11 = std::move(n11);
    }
    const Complex b0 = w11[0];
    WallPair out;
    out.n   = static_cast<int>(gammas.size()) - 1;
    out.w00 = w00 / b0;
    out.w01 = w01 / b0;
    out.w10 = w10 / b0;
    out.w11 = w11 / b0;
    out.A   = out.w01.truncated(out.n);
    out.B   = out.w11.truncated(out.n);

    const Poly det = star(out.B, out.n) * out.B - star(out.A, out.n) * out.A;
    out.determinant_constant = det[out.n].real();
    if (std::abs(out.determinant_constant - rho2_product) > tol.roots * std::max(1.0, rho2_product))
        throw ConsistencyError("wall_pair: determinant constant mismatch");
    return out;
}

RationalSchur rational_from_schur_params(const SchurParams& p, const Tolerances& tol)
{
    if (!p.is_finite())
        throw ArgumentError("rational_from_schur_params: terminal parameter required");
    p.validate(tol);
    const Complex s = *p.terminal;
    if (p.size() == 0)
        return {Poly::constant(s), Poly::constant(1.0), 0};

    const WallPair w = wall_pair(p.interior, tol);
    const Poly z     = Poly::monomial(1);
    return {w.A + z * star(w.B, w.n) * s, w.B + z * star(w.A, w.n) * s, p.size()};
}

BlaschkeProduct blaschke_from_schur_params(const SchurParams& p, const Tolerances& tol)
{
    const RationalSchur f = rational_from_schur_params(p, tol);
    if (p.size() == 0)
        return {std::arg(*p.terminal), {}};
    const Poly& num = f.num;
    const Poly& den = f.den;

    BlaschkeProduct b;
    b.phase = std::arg(num.leading() / den[0]);
    b.zeros = roots(num, tol);
    if (static_cast<int>(b.zeros.size()) != p.size())
        throw NumericError("blaschke_from_schur_params: numerator lost degree");
    for (const auto& zk : b.zeros)
        if (std::abs(zk) >= 1.0)
            throw NumericError("blaschke_from_schur_params: zero escaped the unit disk");
    return b;
}

Complex caratheodory_from_schur(Complex f, Complex z)
{
    const Complex zf = z * f;
    if (zf == Complex(1.0))
        throw ArgumentError("caratheodory_from_schur: 1 - z f vanishes");
    return (1.0 + zf) / (1.0 - zf);
}

Complex schur_from_caratheodory(Complex F, Complex z)
{
    if (z == Complex(0.0))
        throw ArgumentError("schur_from_caratheodory: z = 0 needs the limit path f(0) = F'(0)/2");
    return (F - 1.0) / (z * (F + 1.0));
}

std::vector<Complex> circle_samples(int count, double radius, double offset)
{
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        pts.push_back(std::polar(radius, 2.0 * std::numbers::pi * k / count + offset));
    return pts;
}

ProductCheck param_product_check(const SchurParams& p, const RationalSchur& f, int samples)
{
    ProductCheck out;
    out.samples = samples;
    for (const auto& g : p.interior)
        out.product *= 1.0 - std::norm(g);
    if (p.terminal)
        out.product = 0.0;

    double acc     = 0.0;
    bool all_inner = true;
    for (const auto& zeta : circle_samples(samples)) {
        const double d = 1.0 - std::norm(f(zeta));
        if (d > 1e-12)
            all_inner = false;
        acc += d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity();
    }
    out.inner    = all_inner;
    out.integral = all_inner ? 0.0 : std::exp(acc / samples);
    const double scale = std::max(out.product, out.integral);
    out.gap = scale > 0.0 ? std::abs(out.product - out.integral) / scale : 0.0;
    return out;
}

} // namespace cmvkit
