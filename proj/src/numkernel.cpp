#include "cmvkit/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace cmvkit {

void Tolerances::validate() const
{
    if (!(structural > 0.0 && deflate > 0.0 && roots > 0.0))
        throw ArgumentError("tolerances must be strictly positive");
    if (!(structural <= deflate && deflate <= roots))
        throw ArgumentError("tolerances must satisfy structural <= deflate <= roots");
}

Poly star(const Poly& p, int n)
{
    if (n < p.degree())
        throw ArgumentError("star: degree bound " + std::to_string(n) +
                            " below polynomial degree " + std::to_string(p.degree()));
    std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        v[static_cast<std::size_t>(j)] = std::conj(p[n - j]);
    return Poly(std::move(v));
}

Poly from_roots(std::span<const Complex> zs)
{
    Poly p = Poly::constant(1.0);
    for (const auto& z : zs)
        p = p * Poly({-z, Complex(1.0)});
    return p;
}

double coeff_distance(const Poly& a, const Poly& b)
{
    const int d = std::max(a.degree(), b.degree());
    double gap  = 0.0;
    for (int k = 0; k <= d; ++k)
        gap = std::max(gap, std::abs(a[k] - b[k]));
    return gap;
}

std::vector<Complex> taylor_coeffs(const Poly& p, Complex z0, int count)
{
    // Repeated synthetic division by (z - z0).
    std::vector<Complex> out;
    std::vector<Complex> c = p.coeffs();
    for (int k = 0; k < count; ++k) {
        if (c.empty()) {
            out.emplace_back(0.0);
            continue;
        }
        std::vector<Complex> q(c.size() > 1 ? c.size() - 1 : 0);
        Complex acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = acc * z0 + c[i];
            if (i > 0)
                q[i - 1] = acc;
        }
        out.push_back(acc);
        c = std::move(q);
    }
    return out;
}

Matrix companion(const Poly& p)
{
    const int n = p.degree();
    if (n < 1)
        throw ArgumentError("companion: degree must be >= 1");
    Matrix m  = Matrix::Zero(n, n);
    const Complex lead = p.leading();
    for (int j = 0; j < n; ++j)
        m(0, j) = -p[n - 1 - j] / lead;
    for (int i = 1; i < n; ++i)
        m(i, i - 1) = 1.0;
    return m;
}

EigenResult eig(const Matrix& m)
{
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ArgumentError("eig: matrix must be square and non-empty");
    if (!m.allFinite())
        throw ArgumentError("eig: non-finite entries");

    const Eigen::Index n = m.rows();
    Eigen::ComplexEigenSolver<Matrix> solver;
    solver.setMaxIterations(30 * static_cast<int>(n));
    solver.compute(m, true);
    if (solver.info() != Eigen::Success)
        throw NumericError("eig: complex QR did not converge within " +
                           std::to_string(30 * n) + " sweeps");

    EigenResult out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.residuals.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex lambda = solver.eigenvalues()(k);
        Vector v             = solver.eigenvectors().col(k);
        const double nv      = v.norm();
        if (nv > 0.0)
            v /= nv;
        out.values.push_back(lambda);
        out.residuals.push_back((m * v - lambda * v).norm());
    }
    return out;
}

Vector solve(const Matrix& m, const Vector& rhs, const Tolerances& tol)
{
    if (m.rows() != m.cols() || m.rows() != rhs.size())
        throw ArgumentError("solve: dimension mismatch");
    Eigen::PartialPivLU<Matrix> lu(m);
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const auto& lu_m   = lu.matrixLU();
    for (Eigen::Index k = 0; k < lu_m.rows(); ++k)
        if (std::abs(lu_m(k, k)) <= tol.structural * scale)
            throw NumericError("solve: pivot below singularity threshold");
    return lu.solve(rhs);
}

std::vector<Complex> roots(const Poly& p, const Tolerances& tol)
{
    const Poly q = p.deflated(tol.deflate);
    if (q.is_zero())
        throw ArgumentError("roots: zero polynomial");
    if (q.degree() == 0)
        return {};
    return eig(companion(q)).values;
}

std::vector<Cluster> cluster(std::span<const Complex> points, double radius)
{
    const std::size_t n = points.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(points[i] - points[j]) <= radius)
                parent[find(i)] = find(j);

    std::vector<Cluster> out;
    std::vector<std::size_t> root_of;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it             = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            out.push_back({points[i], 1});
        } else {
            auto& c = out[static_cast<std::size_t>(it - root_of.begin())];
            c.value = (c.value * static_cast<double>(c.multiplicity) + points[i]) /
                      static_cast<double>(c.multiplicity + 1);
            ++c.multiplicity;
        }
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
        return std::make_tuple(a.value.real(), a.value.imag()) <
               std::make_tuple(b.value.real(), b.value.imag());
    });
    return out;
}

std::vector<Complex> expand(std::span<const Cluster> clusters)
{
    std::vector<Complex> out;
    for (const auto& c : clusters)
        out.insert(out.end(), static_cast<std::size_t>(c.multiplicity), c.value);
    return out;
}

double match_distance(std::span<const Complex> have, std::span<const Complex> want)
{
    if (have.size() < want.size())
        return std::numeric_limits<double>::infinity();
    struct Pair
    {
        double d;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(have.size() * want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        for (std::size_t j = 0; j < have.size(); ++j)
            pairs.push_back({std::abs(want[i] - have[j]), i, j});
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.d < b.d; });

    std::vector<bool> used_w(want.size(), false), used_h(have.size(), false);
    double worst        = 0.0;
    std::size_t matched = 0;
    for (const auto& p : pairs) {
        if (used_w[p.i] || used_h[p.j])
            continue;
        used_w[p.i] = used_h[p.j] = true;
        worst                     = std::max(worst, p.d);
        if (++matched == want.size())
            break;
    }
    return worst;
}

double unitarity_defect(const Matrix& m)
{
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

} // namespace cmvkit
