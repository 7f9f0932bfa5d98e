#include "cmvkit/cmv.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cmvkit {

namespace {

// alpha_{-1} = -1; parameters past the end read as zero.
struct ParamView
{
    std::vector<Complex> a;
    int terminal_index = -1;

    Complex alpha(int k) const
    {
        if (k == -1)
            return -1.0;
        return (k >= 0 && k < static_cast<int>(a.size())) ? a[static_cast<std::size_t>(k)] : 0.0;
    }

    double rho(int k) const
    {
        if (k == terminal_index)
            return 0.0;
        const double m = std::abs(alpha(k));
        return std::sqrt(std::max(0.0, (1.0 - m) * (1.0 + m)));
    }
};

ParamView view_of(const SchurParams& p)
{
    return {p.all(), p.terminal ? p.size() : -1};
}

double eps(int m) { return (m % 2 == 0) ? 0.0 : 1.0; }

Complex cmv_entry(const ParamView& v, int i, int j)
{
    if (i == j)
        return -std::conj(v.alpha(i)) * v.alpha(i - 1);
    if (i == j + 2)
        return v.rho(j) * v.rho(j + 1) * eps(j);
    if (j == i + 2)
        return v.rho(i) * v.rho(i + 1) * eps(i + 1);
    if (i == j + 1) {
        const int m = j;
        return std::conj(v.alpha(m + 1)) * v.rho(m) * eps(m) - v.alpha(m - 1) * v.rho(m) * eps(m + 1);
    }
    if (j == i + 1) {
        const int m = i;
        return std::conj(v.alpha(m + 1)) * v.rho(m) * eps(m + 1) - v.alpha(m - 1) * v.rho(m) * eps(m);
    }
    return 0.0;
}

Matrix build(const ParamView& v, int dim)
{
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = std::max(0, i - 2); j <= std::min(dim - 1, i + 2); ++j)
            m(i, j) = cmv_entry(v, i, j);
    return m;
}

Matrix psi(Complex a, double r)
{
    Matrix m(2, 2);
    m << std::conj(a), r, r, -a;
    return m;
}

void require_terminal(const SchurParams& p, const Tolerances& tol, const char* who)
{
    if (!p.is_finite())
        throw ArgumentError(std::string(who) + ": a unimodular terminal parameter is required");
    p.validate(tol);
}

std::vector<int> partition(int dim, bool truncated_layout)
{
    std::vector<int> sizes;
    int left = dim;
    if (!truncated_layout && left > 0) {
        sizes.push_back(1);
        --left;
    }
    while (left > 0) {
        sizes.push_back(std::min(2, left));
        left -= 2;
    }
    return sizes;
}

} // namespace

double max_gap(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return std::numeric_limits<double>::infinity();
    if (a.size() == 0)
        return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

CmvMatrix assemble_cmv(const SchurParams& p, const Tolerances& tol)
{
    require_terminal(p, tol, "assemble_cmv");
    return {p, build(view_of(p), p.size() + 1)};
}

Matrix cmv_section(std::span<const Complex> alphas, int dim)
{
    if (dim < 1)
        throw ArgumentError("cmv_section: dimension must be >= 1");
    return build(ParamView{{alphas.begin(), alphas.end()}, -1}, dim);
}

LmFactors lm_factors(const SchurParams& p, const Tolerances& tol)
{
    require_terminal(p, tol, "lm_factors");
    const int n  = p.size() + 1;
    const auto v = view_of(p);
    LmFactors out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    out.M(0, 0) = 1.0;
    for (int k = 0; k <= p.size(); ++k) {
        Matrix& target = (k % 2 == 0) ? out.L : out.M;
        if (k == p.size())
            target(k, k) = std::conj(v.alpha(k));
        else
            target.block(k, k, 2, 2) = psi(v.alpha(k), v.rho(k));
    }
    return out;
}

Matrix alternate_cmv(const SchurParams& p, const Tolerances& tol)
{
    const auto f = lm_factors(p, tol);
    return f.M * f.L;
}

TruncatedCmv truncate(const CmvMatrix& c)
{
    const int n = c.dimension();
    if (n < 2)
        throw ArgumentError("truncate: dimension must be >= 2");
    TruncatedCmv t;
    t.params        = c.params;
    t.dense         = c.dense.bottomRightCorner(n - 1, n - 1);
    t.colligation.S = c.dense(0, 0);
    t.colligation.G = c.dense.row(0).tail(n - 1).transpose();
    t.colligation.F = c.dense.col(0).tail(n - 1);
    return t;
}

TruncatedCmv truncated_cmv(const SchurParams& p, bool alternate, const Tolerances& tol)
{
    TruncatedCmv t = truncate(assemble_cmv(p, tol));
    if (alternate) {
        t.dense.transposeInPlace();
        std::swap(t.colligation.G, t.colligation.F);
        t.alternate = true;
    }
    return t;
}

BlockTridiagonal blocks(const Matrix& m, bool truncated_layout)
{
    BlockTridiagonal out;
    out.sizes = partition(static_cast<int>(m.rows()), truncated_layout);
    std::vector<int> start(out.sizes.size(), 0);
    for (std::size_t k = 1; k < out.sizes.size(); ++k)
        start[k] = start[k - 1] + out.sizes[k - 1];
    for (std::size_t k = 0; k < out.sizes.size(); ++k) {
        out.diag.push_back(m.block(start[k], start[k], out.sizes[k], out.sizes[k]));
        if (k + 1 < out.sizes.size()) {
            out.lower.push_back(m.block(start[k + 1], start[k], out.sizes[k + 1], out.sizes[k]));
            out.upper.push_back(m.block(start[k], start[k + 1], out.sizes[k], out.sizes[k + 1]));
        }
    }
    return out;
}

BlockTridiagonal blocks(const TruncatedCmv& t)
{
    return blocks(t.dense, true);
}

BlockTridiagonal block_formulas(const SchurParams& p, bool truncated_layout, int dim)
{
    const auto v = view_of(p);
    auto a       = [&](int k) { return v.alpha(k); };
    auto ac      = [&](int k) { return std::conj(v.alpha(k)); };
    auto r       = [&](int k) { return v.rho(k); };

    auto B = [&](int n) {
        Matrix m(2, 2);
        m << -ac(2 * n - 1) * a(2 * n - 2), -r(2 * n - 1) * a(2 * n - 2),
            ac(2 * n) * r(2 * n - 1), -ac(2 * n) * a(2 * n - 1);
        return m;
    };
    auto A = [&](int n) {
        Matrix m(2, 2);
        m << r(2 * n) * r(2 * n - 1), -r(2 * n) * a(2 * n - 1), 0.0, 0.0;
        return m;
    };
    auto C = [&](int n) {
        Matrix m(2, 2);
        m << 0.0, 0.0, ac(2 * n + 1) * r(2 * n), r(2 * n + 1) * r(2 * n);
        return m;
    };

    BlockTridiagonal out;
    out.sizes       = partition(dim, truncated_layout);
    const int first = truncated_layout ? 1 : 0;
    for (std::size_t k = 0; k < out.sizes.size(); ++k) {
        const int n  = first + static_cast<int>(k);
        const int sk = out.sizes[k];
        if (n == 0) {
            Matrix b0(1, 1);
            b0 << ac(0);
            out.diag.push_back(b0);
        } else {
            out.diag.push_back(B(n).topLeftCorner(sk, sk));
        }
        if (k + 1 < out.sizes.size()) {
            const int sn = out.sizes[k + 1];
            if (n == 0) {
                Matrix c0(1, 2), a0(2, 1);
                c0 << ac(1) * r(0), r(1) * r(0);
                a0 << r(0), 0.0;
                out.upper.push_back(c0.leftCols(sn));
                out.lower.push_back(a0.topRows(sn));
            } else {
                out.upper.push_back(C(n).topLeftCorner(sk, sn));
                out.lower.push_back(A(n).topLeftCorner(sn, sk));
            }
        }
    }
    return out;
}

Matrix reassemble(const BlockTridiagonal& b)
{
    int dim = 0;
    for (int s : b.sizes)
        dim += s;
    Matrix m = Matrix::Zero(dim, dim);
    int at   = 0;
    for (std::size_t k = 0; k < b.sizes.size(); ++k) {
        const int sk = b.sizes[k];
        m.block(at, at, sk, sk) = b.diag[k];
        if (k + 1 < b.sizes.size()) {
            const int sn = b.sizes[k + 1];
            m.block(at + sk, at, sn, sk) = b.lower[k];
            m.block(at, at + sk, sk, sn) = b.upper[k];
        }
        at += sk;
    }
    return m;
}

RecoveredParams params_from_truncated(const Matrix& m, const Tolerances& tol)
{
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ArgumentError("params_from_truncated: matrix must be square and non-empty");
    if (!m.allFinite())
        throw ArgumentError("params_from_truncated: non-finite entries");
    const int N = static_cast<int>(m.rows());
    // 1-based T(r, c) is the parent entry C(r, c).
    auto T = [&](int r, int c) { return m(r - 1, c - 1); };

    RecoveredParams out;
    if (N == 1) {
        const Complex v = T(1, 1);
        if (std::abs(v) >= 1.0)
            throw ConsistencyError("params_from_truncated: |entry| >= 1 is not a truncated CMV matrix");
        out.params.interior = {-v};
        out.params.terminal = Complex(1.0);
        out.unique          = false;
    } else {
        std::vector<double> mod(static_cast<std::size_t>(N));
        for (int k = 1; k < N; ++k) {
            const Complex ar = (k % 2 == 1) ? T(k, k + 1) : T(k + 1, k);
            mod[static_cast<std::size_t>(k - 1)] = std::sqrt(std::norm(T(k, k)) + std::norm(ar));
        }
        mod[static_cast<std::size_t>(N - 1)] = std::abs(T(N, N));
        std::vector<double> rho(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) {
            const double a = mod[static_cast<std::size_t>(k)];
            if (!(a < 1.0))
                throw ConsistencyError("params_from_truncated: recovered |alpha_" + std::to_string(k) +
                                       "| >= 1 inside the sequence");
            rho[static_cast<std::size_t>(k)] = std::sqrt((1.0 - a) * (1.0 + a));
        }

        std::vector<Complex> alpha(static_cast<std::size_t>(N) + 1);
        // alpha_{k-1} from the -alpha_{k-1} rho_k entries.
        for (int k = 1; k < N; ++k) {
            const Complex ar = (k % 2 == 1) ? T(k, k + 1) : T(k + 1, k);
            alpha[static_cast<std::size_t>(k - 1)] = -ar / rho[static_cast<std::size_t>(k)];
        }
        // alpha_N from the conj(alpha_N) rho_{N-1} entry.
        const int k       = N - 1;
        const Complex top = (k % 2 == 0) ? T(k, k + 1) : T(k + 1, k);
        Complex terminal  = std::conj(top / rho[static_cast<std::size_t>(N - 1)]);
        if (std::abs(std::abs(terminal) - 1.0) > tol.roots)
            throw ConsistencyError("params_from_truncated: recovered terminal is not unimodular");
        terminal /= std::abs(terminal);
        alpha[static_cast<std::size_t>(N - 1)] = -T(N, N) * terminal;

        out.params.interior.assign(alpha.begin(), alpha.begin() + N);
        out.params.terminal = terminal;
    }

    const Matrix rebuilt = build(view_of(out.params), N + 1).bottomRightCorner(N, N);
    out.residual = max_gap(rebuilt, m);
    if (!(out.residual <= tol.roots))
        throw ConsistencyError("params_from_truncated: not a truncated CMV matrix (reassembly residual " +
                               std::to_string(out.residual) + ")");
    return out;
}

Matrix rotation_diag(int n, double angle)
{
    Vector d(n);
    for (int k = 0; k < n; ++k)
        d(k) = (k % 2 == 0) ? std::polar(1.0, angle) : Complex(1.0);
    return d.asDiagonal();
}

RotationResult rotate_conjugate(const TruncatedCmv& t, double angle, const Tolerances& tol)
{
    RotationResult out;
    out.t = truncated_cmv(t.params.rotated(angle), t.alternate, tol);
    // The transposed form conjugates with V^{-1} in place of V.
    const double a  = t.alternate ? -angle : angle;
    const Matrix V  = rotation_diag(t.dimension(), a);
    const Matrix Vi = rotation_diag(t.dimension(), -a);
    out.residual    = max_gap(V * t.dense * Vi, out.t.dense);
    return out;
}

DefectData defect_data(const TruncatedCmv& t, const Tolerances& tol)
{
    if (t.alternate)
        throw ArgumentError("defect_data: expects the standard (non-alternate) form");
    const int n = t.dimension();
    const Matrix& T = t.dense;
    const Matrix I  = Matrix::Identity(n, n);

    DefectData d;
    const Complex a0 = t.params[0];
    const Complex a1 = t.params[1];
    d.rho0           = t.params.rho(0);
    d.left           = Vector::Zero(n);
    d.left(0)        = 1.0;
    d.right          = Vector::Zero(n);
    d.right(0)       = a1;
    if (n >= 2)
        d.right(1) = t.params.rho(1);

    const double r2      = d.rho0 * d.rho0;
    const Matrix dstar2  = I - T * T.adjoint();
    const Matrix d2      = I - T.adjoint() * T;
    const Matrix pl      = d.left * d.left.adjoint();
    const Matrix pr      = d.right * d.right.adjoint();
    d.left_gram_residual  = max_gap(dstar2, r2 * pl);
    d.right_gram_residual = max_gap(d2, r2 * pr);

    auto sqrt_psd = [](const Matrix& m, double& top, int& rank, double cut) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m);
        // Eigenvalues below the cut are rounding noise of a rank-one operator.
        const Eigen::VectorXd ev = (es.eigenvalues().array() > cut).select(es.eigenvalues(), 0.0);
        top  = ev.maxCoeff();
        rank = static_cast<int>((ev.array() > cut).count());
        return Matrix(es.eigenvectors() * ev.cwiseSqrt().cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint());
    };
    int rank_left = 0, rank_right = 0;
    const Matrix root_left  = sqrt_psd(dstar2, d.left_singular, rank_left, tol.roots);
    const Matrix root_right = sqrt_psd(d2, d.right_singular, rank_right, tol.roots);
    d.left_root_residual    = max_gap(root_left, d.rho0 * pl);
    d.right_root_residual   = max_gap(root_right, d.rho0 * pr);

    Vector target    = Vector::Zero(n);
    target(0)        = -a0;
    d.shift_residual = (T * d.right - target).cwiseAbs().maxCoeff();

    if (rank_left != 1 || rank_right != 1)
        throw ConsistencyError("defect_data: defect operators are not rank one (ranks " +
                               std::to_string(rank_left) + ", " + std::to_string(rank_right) + ")");
    return d;
}

TruncatedCmv livsic_matrix(double r, double phi, int n)
{
    if (!(r > 0.0 && r < 1.0))
        throw ArgumentError("livsic_matrix: r must lie in (0, 1)");
    if (n < 1)
        throw ArgumentError("livsic_matrix: dimension must be >= 1");
    TruncatedCmv t;
    t.dense = Matrix::Zero(n, n);
    // 1-based pattern: t(1,2) = -r e^{i phi}, t(2k, 2k+2) = t(2k+1, 2k-1) = 1.
    auto set = [&](int i, int j, Complex v) {
        if (i >= 1 && i <= n && j >= 1 && j <= n)
            t.dense(i - 1, j - 1) = v;
    };
    set(1, 2, -std::polar(r, phi));
    for (int k = 1; 2 * k <= n + 2; ++k) {
        set(2 * k, 2 * k + 2, 1.0);
        set(2 * k + 1, 2 * k - 1, 1.0);
    }
    t.params.interior.assign(static_cast<std::size_t>(n) + 1, Complex(0.0));
    t.params.interior[0] = std::polar(r, phi);

    const Matrix parent = cmv_section(t.params.interior, n + 1);
    t.colligation.S     = parent(0, 0);
    t.colligation.G     = parent.row(0).tail(n).transpose();
    t.colligation.F     = parent.col(0).tail(n);
    return t;
}

TruncatedCmv submatrix_k(const TruncatedCmv& t, int k, const Tolerances& tol)
{
    const int n = t.dimension();
    if (k < 0 || k >= n)
        throw ArgumentError("submatrix_k: need 0 <= k < dimension");
    if (k == 0)
        return t;
    if (!t.params.is_finite())
        throw ArgumentError("submatrix_k: parameter tail needs a terminal parameter");

    SchurParams tail;
    tail.interior.assign(t.params.interior.begin() + k, t.params.interior.end());
    tail.terminal = t.params.terminal;
    const bool alt = t.alternate != (k % 2 == 1);
    TruncatedCmv out = truncated_cmv(tail, alt, tol);

    const double gap = max_gap(out.dense, t.dense.bottomRightCorner(n - k, n - k));
    if (!(gap <= tol.structural))
        throw ConsistencyError("submatrix_k: deleted block differs from the tail matrix by " +
                               std::to_string(gap));
    out.dense = t.dense.bottomRightCorner(n - k, n - k);
    return out;
}

} // namespace cmvkit
