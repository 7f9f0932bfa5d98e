#include "cmvkit/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cmvkit/opuc.hpp"

namespace cmvkit {

namespace {

Complex resolvent_route(const Matrix& parent, Complex z, const Tolerances& tol)
{
    const int n     = static_cast<int>(parent.rows());
    Vector rhs      = Vector::Zero(n);
    rhs(0)          = 1.0;
    const Vector x  = solve(parent - z * Matrix::Identity(n, n), rhs, tol);
    const Complex d = 1.0 + z * x(0);
    if (d == Complex(0.0))
        throw NumericError("charfun_schur: F(z) + 1 vanishes");
    return x(0) / d;
}

Matrix bordered_parent(const TruncatedCmv& t)
{
    const int n = t.dimension();
    Matrix c(n + 1, n + 1);
    c(0, 0)                     = t.colligation.S;
    c.row(0).tail(n)            = t.colligation.G.transpose();
    c.col(0).tail(n)            = t.colligation.F;
    c.bottomRightCorner(n, n)   = t.dense;
    return c;
}

} // namespace

SpectrumResult spectrum(const Matrix& m, const Tolerances& tol)
{
    const EigenResult e = eig(m);
    SpectrumResult out;
    out.eigenvalues = e.values;
    out.residuals   = e.residuals;
    out.clustered   = cluster(e.values, tol.roots);
    for (const auto& v : e.values)
        out.max_modulus = std::max(out.max_modulus, std::abs(v));
    out.all_in_disk = out.max_modulus <= 1.0 + tol.roots;
    return out;
}

SpectrumResult spectrum(const TruncatedCmv& t, const Tolerances& tol)
{
    return spectrum(t.dense, tol);
}

Complex charfun_schur(const CmvMatrix& c, Complex z, const Tolerances& tol)
{
    if (!(std::abs(z) < 1.0))
        throw ArgumentError("charfun_schur: z must lie in the open unit disk");
    if (z == Complex(0.0))
        return c.params[0];
    return resolvent_route(c.dense, z, tol);
}

Complex charfun_schur(const TruncatedCmv& t, Complex z, const Tolerances& tol)
{
    if (!(std::abs(z) < 1.0))
        throw ArgumentError("charfun_schur: z must lie in the open unit disk");
    if (z == Complex(0.0))
        return t.params.size() > 0 || t.params.is_finite() ? t.params[0] : std::conj(t.colligation.S);
    return resolvent_route(bordered_parent(t), z, tol);
}

Poly hessenberg_charpoly(const Matrix& h)
{
    const int n = static_cast<int>(h.rows());
    // p[k] = det(z I_k - H_k), H_k the leading k x k block.
    std::vector<Poly> p{Poly::constant(1.0)};
    const Poly z = Poly::monomial(1);
    for (int k = 1; k <= n; ++k) {
        Poly pk = (z - Poly::constant(h(k - 1, k - 1))) * p[static_cast<std::size_t>(k - 1)];
        Complex sub = 1.0;
        for (int i = k - 1; i >= 1; --i) {
            sub *= h(i, i - 1);
            if (sub == Complex(0.0))
                break;
            pk -= p[static_cast<std::size_t>(i - 1)] * (h(i - 1, k - 1) * sub);
        }
        p.push_back(std::move(pk));
    }
    return p.back();
}

Poly charpoly(const Matrix& m)
{
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ArgumentError("charpoly: matrix must be square and non-empty");
    if (m.rows() <= 2)
        return hessenberg_charpoly(m);
    Eigen::HessenbergDecomposition<Matrix> hd(m);
    return hessenberg_charpoly(hd.matrixH());
}

CharpolyReport charpoly_check(const CmvMatrix& c, int n)
{
    if (n < 1 || n > c.dimension())
        throw ArgumentError("charpoly_check: need 1 <= n <= dimension");
    CharpolyReport r;
    r.n           = n;
    r.determinant = charpoly(c.dense.topLeftCorner(n, n));
    const auto a  = c.params.all();
    // The last step may use the unimodular terminal, so szego_up's disk check is bypassed.
    r.phi = Poly::constant(1.0);
    for (int k = 0; k < n; ++k)
        r.phi = szego_step(r.phi, k, a[static_cast<std::size_t>(k)]);
    r.gap         = coeff_distance(r.determinant, r.phi);
    return r;
}

std::vector<Complex> interior_samples(int count)
{
    return circle_samples(count, 0.6, 0.3);
}

IterateReport schur_iterate_check(const TruncatedCmv& t, int k, int sample_count, const Tolerances& tol)
{
    IterateReport rep;
    rep.k       = k;
    rep.samples = sample_count;
    const TruncatedCmv sub = submatrix_k(t, k, tol);
    const CmvMatrix parent = assemble_cmv(sub.params, tol);

    RationalSchur f = rational_from_schur_params(t.params, tol);
    for (int j = 0; j < k; ++j)
        f = schur_step(f, tol).second;

    for (const auto& z : interior_samples(sample_count))
        rep.gap = std::max(rep.gap, std::abs(charfun_schur(parent, z, tol) - f(z)));
    return rep;
}

} // namespace cmvkit
