#pragma once

// Complex polynomials and the dense linear-algebra kernel shared by every
// other part of cmvkit.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cmvkit {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

//
// Error hierarchy. The CLI maps each family onto an exit code.
//
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: domain violations, malformed payloads.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

/// Numerical failure: non-convergence, singular solves, lost precision.
class NumericError : public Error
{
public:
    using Error::Error;
};

/// Two independent routes disagreed, or a structural invariant failed.
class ConsistencyError : public NumericError
{
public:
    using NumericError::NumericError;
};

/// Request is valid but outside what the solvers support.
class CapabilityError : public Error
{
public:
    using Error::Error;
};

/// Dimensionless thresholds used throughout the library.
struct Tolerances
{
    double structural = 1e-12;
    double roots      = 1e-8;
    double deflate    = 1e-11;

    /// Throws ArgumentError unless 0 < structural <= deflate <= roots.
    void validate() const;
};

//
// Dense polynomial with ascending coefficients. Only exact trailing zeros are
// trimmed on construction; tolerance-based deflation is explicit.
//
template <typename Scalar>
class BasicPoly
{
public:
    BasicPoly() = default;

    explicit BasicPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs))
    {
        trim_exact();
    }

    BasicPoly(std::initializer_list<Scalar> coeffs)
        : coeffs_(coeffs)
    {
        trim_exact();
    }

    static BasicPoly constant(Scalar c) { return BasicPoly({c}); }

    static BasicPoly monomial(int k, Scalar c = Scalar(1))
    {
        std::vector<Scalar> v(static_cast<std::size_t>(k) + 1, Scalar(0));
        v.back() = c;
        return BasicPoly(std::move(v));
    }

    /// Degree, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    Scalar operator[](int k) const
    {
        return (k >= 0 && k < static_cast<int>(coeffs_.size()))
                   ? coeffs_[static_cast<std::size_t>(k)]
                   : Scalar(0);
    }

    Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    /// Horner evaluation.
    Scalar operator()(Scalar z) const
    {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& c : coeffs_)
            m = std::max(m, static_cast<double>(std::abs(c)));
        return m;
    }

    BasicPoly derivative() const
    {
        if (coeffs_.size() <= 1)
            return {};
        std::vector<Scalar> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return BasicPoly(std::move(d));
    }

    /// Multiplication by z^k.
    BasicPoly shifted_up(int k = 1) const
    {
        if (is_zero())
            return {};
        std::vector<Scalar> v(static_cast<std::size_t>(k), Scalar(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return BasicPoly(std::move(v));
    }

    /// Division by z, discarding the constant term.
    BasicPoly shifted_down() const
    {
        if (coeffs_.size() <= 1)
            return {};
        return BasicPoly(std::vector<Scalar>(coeffs_.begin() + 1, coeffs_.end()));
    }

    /// Drops trailing coefficients with modulus <= rel_tol * max|coeff|.
    BasicPoly deflated(double rel_tol) const
    {
        const double cut = rel_tol * max_abs();
        std::vector<Scalar> v = coeffs_;
        while (!v.empty() && std::abs(v.back()) <= cut)
            v.pop_back();
        return BasicPoly(std::move(v));
    }

    /// Copy truncated to degree <= d.
    BasicPoly truncated(int d) const
    {
        if (d < 0)
            return {};
        std::vector<Scalar> v = coeffs_;
        if (static_cast<int>(v.size()) > d + 1)
            v.resize(static_cast<std::size_t>(d) + 1);
        return BasicPoly(std::move(v));
    }

    BasicPoly& operator+=(const BasicPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size(), Scalar(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        trim_exact();
        return *this;
    }

    BasicPoly& operator-=(const BasicPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size(), Scalar(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] -= o.coeffs_[k];
        trim_exact();
        return *this;
    }

    BasicPoly& operator*=(Scalar s)
    {
        for (auto& c : coeffs_)
            c *= s;
        trim_exact();
        return *this;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator*(BasicPoly a, Scalar s) { return a *= s; }
    friend BasicPoly operator*(Scalar s, BasicPoly a) { return a *= s; }
    friend BasicPoly operator/(BasicPoly a, Scalar s) { return a *= (Scalar(1) / s); }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return BasicPoly(std::move(v));
    }

private:
    void trim_exact()
    {
        while (!coeffs_.empty() && coeffs_.back() == Scalar(0))
            coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

using Poly = BasicPoly<Complex>;

/// Reversed conjugate P*(z) = sum conj(p_{n-j}) z^j with p padded to degree n.
Poly star(const Poly& p, int n);

/// Monic polynomial prod (z - z_k).
Poly from_roots(std::span<const Complex> zs);

/// Max coefficient gap between two polynomials.
double coeff_distance(const Poly& a, const Poly& b);

/// Taylor coefficients of p around z0 up to (and including) order `count - 1`.
std::vector<Complex> taylor_coeffs(const Poly& p, Complex z0, int count);

/// Frame (upper Hessenberg style) companion matrix of a polynomial of degree >= 1.
Matrix companion(const Poly& p);

struct EigenResult
{
    std::vector<Complex> values;
    std::vector<double> residuals; ///< ||(m - lambda I) v|| for a unit eigenvector v
};

/// Point with algebraic multiplicity.
struct Cluster
{
    Complex value;
    int multiplicity = 1;
};

/// Eigenvalues of a square complex matrix via Hessenberg reduction and
/// shifted complex QR. Throws NumericError when the iteration stalls.
EigenResult eig(const Matrix& m);

/// Solves m x = rhs with partial pivoting; throws NumericError when a pivot
/// falls below tol.structural * ||m||.
Vector solve(const Matrix& m, const Vector& rhs, const Tolerances& tol = {});

/// Roots of p via its companion matrix.
std::vector<Complex> roots(const Poly& p, const Tolerances& tol = {});

/// Groups points that lie within `radius` of each other (single linkage) and
/// reports the centroid with the group size as multiplicity.
std::vector<Cluster> cluster(std::span<const Complex> points, double radius);

/// Expands clustered points back to a flat list.
std::vector<Complex> expand(std::span<const Cluster> clusters);

/// Optimal-ish pairing distance: greedily matches each of `want` to the
/// nearest unused entry of `have` and returns the worst matched distance.
/// Requires have.size() >= want.size().
double match_distance(std::span<const Complex> have, std::span<const Complex> want);

/// Frobenius norm of m^* m - I.
double unitarity_defect(const Matrix& m);

} // namespace cmvkit
