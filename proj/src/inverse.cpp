#include "cmvkit/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace cmvkit {

double spectrum_gap(std::span<const Complex> eigenvalues, std::span<const Cluster> prescribed)
{
    std::vector<bool> used(eigenvalues.size(), false);
    double gap = 0.0;
    for (const auto& c : prescribed) {
        Complex centroid = 0.0;
        double spread    = 0.0;
        for (int m = 0; m < c.multiplicity; ++m) {
            std::size_t best = eigenvalues.size();
            double dist      = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < eigenvalues.size(); ++j)
                if (!used[j] && std::abs(eigenvalues[j] - c.value) < dist) {
                    dist = std::abs(eigenvalues[j] - c.value);
                    best = j;
                }
            if (best == eigenvalues.size())
                return std::numeric_limits<double>::infinity();
            used[best] = true;
            centroid += eigenvalues[best];
            spread = std::max(spread, std::pow(dist, c.multiplicity));
        }
        centroid /= static_cast<double>(c.multiplicity);
        gap = std::max({gap, std::abs(centroid - c.value), spread});
    }
    return gap;
}

namespace {

void require_disk(std::span<const Complex> zs, const char* who)
{
    for (const auto& z : zs)
        if (!(std::abs(z) < 1.0))
            throw ArgumentError(std::string(who) + ": point outside the open unit disk");
}

std::vector<Cluster> as_clusters(std::span<const Complex> zs, const Tolerances& tol)
{
    return cluster(zs, tol.structural);
}

std::vector<Cluster> merged(const std::vector<Cluster>& in, const Tolerances& tol)
{
    return as_clusters(expand(in), tol);
}

// Taylor coefficients of num/den at z0 up to order count - 1.
std::vector<Complex> quotient_series(const Poly& num, const Poly& den, Complex z0, int count)
{
    const auto a = taylor_coeffs(num, z0, count);
    const auto d = taylor_coeffs(den, z0, count);
    if (d[0] == Complex(0.0))
        throw NumericError("mixed_first: interpolation target has a pole at a node");
    std::vector<Complex> q(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        Complex acc = a[static_cast<std::size_t>(j)];
        for (int i = 1; i <= j; ++i)
            acc -= d[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j - i)];
        q[static_cast<std::size_t>(j)] = acc / d[0];
    }
    return q;
}

struct Node
{
    Complex z;
    int l;
    std::vector<Complex> sigma;
};

Matrix pick_matrix(const std::vector<Node>& nodes)
{
    int r = 0;
    for (const auto& n : nodes)
        r += n.l;
    Matrix P(r, r);
    int row = 0;
    for (const auto& a : nodes) {
        int col = 0;
        for (const auto& b : nodes) {
            const Complex cb = std::conj(b.z);
            const Complex d  = 1.0 - a.z * cb;
            // Bivariate series of 1 / (1 - (z_a + x)(conj(z_b) + y)).
            Matrix g = Matrix::Zero(a.l, b.l);
            for (int i = 0; i < a.l; ++i)
                for (int j = 0; j < b.l; ++j) {
                    Complex v = (i == 0 && j == 0) ? Complex(1.0) : Complex(0.0);
                    if (i > 0)
                        v += cb * g(i - 1, j);
                    if (j > 0)
                        v += a.z * g(i, j - 1);
                    if (i > 0 && j > 0)
                        v += g(i - 1, j - 1);
                    g(i, j) = v / d;
                }
            for (int i = 0; i < a.l; ++i)
                for (int j = 0; j < b.l; ++j) {
                    Complex acc = 0.0;
                    for (int ii = 0; ii <= i; ++ii)
                        for (int jj = 0; jj <= j; ++jj) {
                            const Complex nij = ((ii == 0 && jj == 0) ? Complex(1.0) : Complex(0.0)) -
                                                a.sigma[static_cast<std::size_t>(ii)] *
                                                    std::conj(b.sigma[static_cast<std::size_t>(jj)]);
                            acc += nij * g(i - ii, j - jj);
                        }
                    P(row + i, col + j) = acc;
                }
            col += b.l;
        }
        row += a.l;
    }
    return P;
}

Poly power(const Poly& p, int k)
{
    Poly out = Poly::constant(1.0);
    for (int i = 0; i < k; ++i)
        out = out * p;
    return out;
}

NoSolution no_solution(std::string reason, std::vector<std::pair<std::string, double>> diag = {})
{
    return {std::move(reason), std::move(diag)};
}

MixedSolution finish(const SchurParams& full, const std::vector<Cluster>& eigen,
                     std::span<const Complex> first, const Tolerances& tol)
{
    MixedSolution out;
    out.t             = truncated_cmv(full, false, tol);
    const auto spec   = spectrum(out.t, tol);
    out.spectrum_gap  = spectrum_gap(spec.eigenvalues, eigen);
    const auto rec    = params_from_truncated(out.t.dense, tol);
    for (std::size_t j = 0; j < first.size(); ++j)
        out.param_gap = std::max(out.param_gap, std::abs(rec.params[static_cast<int>(j)] - first[j]));
    const CmvMatrix parent = assemble_cmv(full, tol);
    for (const auto& c : eigen)
        if (c.value != Complex(0.0))
            out.node_residual = std::max(out.node_residual, std::abs(charfun_schur(parent, c.value, tol)));
    return out;
}

bool accepted(const MixedSolution& s, const Tolerances& tol)
{
    return s.spectrum_gap <= tol.roots && s.param_gap <= tol.roots && s.node_residual <= tol.roots;
}

} // namespace

Reconstruction reconstruct_from_spectrum(std::span<const Complex> zs, double phase, const Tolerances& tol)
{
    if (zs.empty())
        throw ArgumentError("reconstruct_from_spectrum: need at least one eigenvalue");
    require_disk(zs, "reconstruct_from_spectrum");
    if (!std::isfinite(phase))
        throw ArgumentError("reconstruct_from_spectrum: phase is not finite");

    Reconstruction out;
    out.phase = phase;
    double worst = 0.0;
    for (const auto& z : zs)
        worst = std::max(worst, std::abs(z));
    if (worst > 1.0 - 1e-3)
        out.warnings.push_back("eigenvalues within 1e-3 of the unit circle; parameters are ill-conditioned");

    const SchurParams p = khrushchev_params(from_roots(zs), tol).rotated(phase);
    out.t               = truncated_cmv(p, false, tol);
    const auto spec     = spectrum(out.t, tol);
    out.spectrum_gap    = spectrum_gap(spec.eigenvalues, as_clusters(zs, tol));
    if (!(out.spectrum_gap <= tol.roots))
        throw ConsistencyError("reconstruct_from_spectrum: spectrum of the result misses the input by " +
                               std::to_string(out.spectrum_gap));
    return out;
}

int MixedFirstData::eigen_count() const
{
    int r = 0;
    for (const auto& c : eigen)
        r += c.multiplicity;
    return r;
}

MixedFirstResult mixed_first(const MixedFirstData& d, const Tolerances& tol)
{
    const int N = d.n;
    const int r = d.eigen_count();
    if (N < 1 || r < 1 || r > N)
        throw ArgumentError("mixed_first: need 1 <= r <= N");
    if (static_cast<int>(d.first_params.size()) != N - r + 1)
        throw ArgumentError("mixed_first: expected N - r + 1 = " + std::to_string(N - r + 1) +
                            " leading parameters");
    require_disk(d.first_params, "mixed_first");
    const auto eigen = merged(d.eigen, tol);
    std::vector<Node> nodes;
    for (const auto& c : eigen) {
        if (c.multiplicity < 1)
            throw ArgumentError("mixed_first: multiplicities must be positive");
        if (!(std::abs(c.value) < 1.0))
            throw ArgumentError("mixed_first: eigenvalue outside the open unit disk");
        if (std::abs(c.value) <= tol.roots)
            throw ArgumentError("mixed_first: zero eigenvalue; use mixed_first_zero_reduction");
        if (c.multiplicity > 3)
            throw CapabilityError("mixed_first: multiplicity " + std::to_string(c.multiplicity) +
                                  " exceeds the supported maximum of 3");
        nodes.push_back({c.value, c.multiplicity, {}});
    }

    // s must interpolate -A / (z B^*) at the nodes.
    const WallPair w = wall_pair(d.first_params, tol);
    const Poly num   = w.A * Complex(-1.0);
    const Poly den   = star(w.B, w.n).shifted_up();
    for (auto& n : nodes)
        n.sigma = quotient_series(num, den, n.z, n.l);

    const Matrix P = pick_matrix(nodes);
    Eigen::SelfAdjointEigenSolver<Matrix> es(P);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale       = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double floor       = ev(0);
    const double second      = r >= 2 ? ev(1) : std::numeric_limits<double>::infinity();
    const std::vector<std::pair<std::string, double>> diag{{"pick_floor", floor},
                                                           {"pick_second", r >= 2 ? second : 0.0},
                                                           {"pick_scale", scale}};
    if (floor < -tol.roots * scale)
        return no_solution("Pick matrix has a negative eigenvalue", diag);
    if (floor > tol.roots * scale)
        return no_solution("Pick matrix is nonsingular; no Blaschke interpolant of order r - 1", diag);
    if (second <= tol.roots * scale)
        return no_solution("Pick matrix has a null space of dimension > 1", diag);

    const Vector c = es.eigenvectors().col(0);
    Poly Np, Dp;
    int idx = 0;
    for (std::size_t b = 0; b < nodes.size(); ++b) {
        Poly others = Poly::constant(1.0);
        for (std::size_t a = 0; a < nodes.size(); ++a)
            if (a != b)
                others = others * power(Poly({1.0, -std::conj(nodes[a].z)}), nodes[a].l);
        const Poly lin = Poly({1.0, -std::conj(nodes[b].z)});
        for (int j = 0; j < nodes[b].l; ++j, ++idx) {
            const Complex cj = c(idx);
            Np += Poly::monomial(j) * power(lin, nodes[b].l - j - 1) * others * cj;
            for (int t = 0; t <= j; ++t)
                Dp += Poly::monomial(j - t) * power(lin, nodes[b].l - (j - t) - 1) * others *
                      (cj * std::conj(nodes[b].sigma[static_cast<std::size_t>(t)]));
        }
    }

    const double nscale = std::max(Np.max_abs(), Dp.max_abs());
    if (!(nscale > 0.0))
        return no_solution("interpolant collapsed to 0/0", diag);
    Np = (Np / Complex(nscale)).deflated(tol.deflate);
    Dp = (Dp / Complex(nscale)).deflated(tol.deflate);
    if (Dp.is_zero() || Dp[0] == Complex(0.0))
        return no_solution("interpolant has a pole at the origin", diag);

    BlaschkeProduct s;
    s.phase = std::arg(Np.leading() / Dp[0]);
    if (Np.degree() != r - 1)
        return no_solution("interpolant has degree " + std::to_string(Np.degree()) + ", expected " +
                               std::to_string(r - 1),
                           diag);
    if (r >= 2) {
        s.zeros = roots(Np, tol);
        for (const auto& z : s.zeros)
            if (!(std::abs(z) < 1.0 - tol.roots))
                return no_solution("interpolant has a zero outside the disk", diag);
        if (Dp.degree() >= 1)
            for (const auto& z : roots(Dp, tol))
                if (std::abs(z) <= 1.0)
                    return no_solution("interpolant has a pole in the closed disk", diag);
    }
    double modulus_gap = 0.0;
    for (const auto& zeta : circle_samples(64, 1.0, 0.1))
        modulus_gap = std::max(modulus_gap, std::abs(std::abs(Np(zeta) / Dp(zeta)) - 1.0));
    if (!(modulus_gap <= tol.roots))
        return no_solution("interpolant is not unimodular on the circle",
                           {{"modulus_gap", modulus_gap}, {"pick_floor", floor}});

    const SchurParams sp = r >= 2 ? schur_params_of_blaschke(s, tol)
                                  : SchurParams{{}, std::polar(1.0, s.phase)};
    SchurParams full;
    full.interior = d.first_params;
    full.interior.insert(full.interior.end(), sp.interior.begin(), sp.interior.end());
    full.terminal = sp.terminal;
    try {
        full.validate(tol);
    } catch (const ArgumentError& e) {
        return no_solution(std::string("assembled parameters are invalid: ") + e.what(), diag);
    }

    MixedSolution out = finish(full, eigen, d.first_params, tol);
    out.pick_floor    = floor;
    out.pick_gap      = r >= 2 ? second : 0.0;
    if (!accepted(out, tol))
        return no_solution("reconstructed matrix fails verification",
                           {{"spectrum_gap", out.spectrum_gap},
                            {"param_gap", out.param_gap},
                            {"node_residual", out.node_residual},
                            {"pick_floor", floor}});
    return out;
}

MixedFirstResult mixed_first_zero_reduction(const MixedFirstData& d, const Tolerances& tol)
{
    const int N = d.n;
    const auto eigen = merged(d.eigen, tol);
    int k = 0;
    std::vector<Cluster> nonzero;
    for (const auto& c : eigen) {
        if (std::abs(c.value) <= tol.roots)
            k += c.multiplicity;
        else
            nonzero.push_back(c);
    }
    if (k == 0)
        throw ArgumentError("mixed_first_zero_reduction: no zero eigenvalue in the data");
    int r_nonzero = 0;
    for (const auto& c : nonzero)
        r_nonzero += c.multiplicity;
    const int p = static_cast<int>(d.first_params.size());
    if (N < 1 || k + r_nonzero > N)
        throw ArgumentError("mixed_first_zero_reduction: more eigenvalues than the dimension");
    if (p < 1 || p > N)
        throw ArgumentError("mixed_first_zero_reduction: need between 1 and N leading parameters");
    require_disk(d.first_params, "mixed_first_zero_reduction");

    // b vanishes to order k at 0 exactly when alpha_0 = ... = alpha_{k-1} = 0.
    for (int j = 0; j < std::min(k, p); ++j)
        if (std::abs(d.first_params[static_cast<std::size_t>(j)]) > tol.roots)
            return no_solution("zero eigenvalue of multiplicity " + std::to_string(k) +
                                   " requires alpha_" + std::to_string(j) + " = 0",
                               {{"alpha_index", j},
                                {"alpha_modulus", std::abs(d.first_params[static_cast<std::size_t>(j)])}});

    // The k-th Schur iterate h = b / z^k has order N - k.
    const int order_h  = N - k;
    const int needed   = order_h - r_nonzero + 1;
    const int supplied = std::max(0, p - k);

    FamilyDescriptor fam;
    fam.data              = d;
    fam.zero_multiplicity = k;
    if (r_nonzero == 0) {
        fam.free_interior = order_h - supplied;
        fam.free_terminal = true;
        fam.description   = "any " + std::to_string(fam.free_interior) +
                          " further parameters in the disk and any unimodular terminal";
        if (order_h == 0)
            fam.description = "any unimodular terminal";
        return fam;
    }
    if (supplied < needed) {
        fam.free_interior = needed - supplied;
        fam.description   = "any " + std::to_string(fam.free_interior) +
                          " further parameters in the disk admitted by the interpolation problem";
        return fam;
    }

    MixedFirstData reduced;
    reduced.n     = order_h;
    reduced.eigen = nonzero;
    reduced.first_params.assign(d.first_params.begin() + k, d.first_params.begin() + k + needed);
    MixedFirstResult sub = mixed_first(reduced, tol);
    if (!std::holds_alternative<MixedSolution>(sub))
        return sub;
    const auto& h = std::get<MixedSolution>(sub);

    SchurParams full;
    full.interior.assign(static_cast<std::size_t>(k), Complex(0.0));
    full.interior.insert(full.interior.end(), h.t.params.interior.begin(), h.t.params.interior.end());
    full.terminal = h.t.params.terminal;

    for (int j = k + needed; j < p; ++j) {
        const double gap = std::abs(full[j] - d.first_params[static_cast<std::size_t>(j)]);
        if (gap > tol.roots)
            return no_solution("surplus leading parameter alpha_" + std::to_string(j) +
                                   " contradicts the unique solution",
                               {{"alpha_index", j}, {"gap", gap}});
    }

    MixedSolution out = finish(full, eigen, d.first_params, tol);
    out.pick_floor    = h.pick_floor;
    out.pick_gap      = h.pick_gap;
    if (!accepted(out, tol))
        return no_solution("reconstructed matrix fails verification",
                           {{"spectrum_gap", out.spectrum_gap},
                            {"param_gap", out.param_gap},
                            {"node_residual", out.node_residual}});
    return out;
}

MixedFirstResult solve_mixed_first(const MixedFirstData& d, const Tolerances& tol)
{
    for (const auto& c : d.eigen)
        if (std::abs(c.value) <= tol.roots)
            return mixed_first_zero_reduction(d, tol);
    return mixed_first(d, tol);
}

MixedSolution family_member(const FamilyDescriptor& f, std::span<const Complex> free_interior,
                            Complex terminal, const Tolerances& tol)
{
    if (static_cast<int>(free_interior.size()) != f.free_interior)
        throw ArgumentError("family_member: expected " + std::to_string(f.free_interior) +
                            " free parameters");
    require_disk(free_interior, "family_member");
    const int k = f.zero_multiplicity;
    std::vector<Complex> prefix(static_cast<std::size_t>(k), Complex(0.0));
    for (std::size_t j = static_cast<std::size_t>(k); j < f.data.first_params.size(); ++j)
        prefix.push_back(f.data.first_params[j]);
    prefix.insert(prefix.end(), free_interior.begin(), free_interior.end());

    if (f.free_terminal) {
        if (std::abs(std::abs(terminal) - 1.0) > tol.structural)
            throw ArgumentError("family_member: terminal must be unimodular");
        SchurParams full{prefix, terminal / std::abs(terminal)};
        std::vector<Cluster> eigen = merged(f.data.eigen, tol);
        return finish(full, eigen, f.data.first_params, tol);
    }

    MixedFirstData completed = f.data;
    completed.first_params   = prefix;
    MixedFirstResult res     = mixed_first_zero_reduction(completed, tol);
    if (auto* s = std::get_if<MixedSolution>(&res))
        return *s;
    if (auto* ns = std::get_if<NoSolution>(&res))
        throw NumericError("family_member: chosen parameters admit no solution: " + ns->reason);
    throw NumericError("family_member: completed data is still underdetermined");
}

MixedLastSolution mixed_last(const MixedLastData& d, const ExtensionOptions& opts, const Tolerances& tol)
{
    const int N = d.n;
    const int m = static_cast<int>(d.eigen.size());
    if (N < 1 || m > N)
        throw ArgumentError("mixed_last: need 0 <= m <= N and N >= 1");
    if (!d.last_params.is_finite())
        throw ArgumentError("mixed_last: the trailing parameters must end with a unimodular terminal");
    if (d.last_params.size() != N - m)
        throw ArgumentError("mixed_last: expected N - m + 1 = " + std::to_string(N - m + 1) +
                            " trailing parameters including the terminal");
    d.last_params.validate(tol);
    require_disk(d.eigen, "mixed_last");

    const TttConstruction ttt =
        theorem_ttt_construct(d.last_params.interior, d.eigen, *d.last_params.terminal, opts, tol);

    MixedLastSolution out;
    out.newton_residual  = ttt.extension.residual;
    out.newton_condition = ttt.extension.condition;
    out.newton_start     = ttt.extension.start;
    out.t                = truncated_cmv(ttt.params, false, tol);

    const auto spec  = spectrum(out.t, tol);
    out.spectrum_gap = spectrum_gap(spec.eigenvalues, as_clusters(d.eigen, tol));
    // A 1x1 matrix does not determine its parameters; use the constructed ones.
    const auto rec          = params_from_truncated(out.t.dense, tol);
    const SchurParams& have = rec.unique ? rec.params : out.t.params;
    for (int j = m; j <= N; ++j)
        out.param_gap = std::max(out.param_gap, std::abs(have[j] - d.last_params[j - m]));
    if (!(out.spectrum_gap <= tol.roots) || !(out.param_gap <= tol.roots))
        throw ConsistencyError("mixed_last: constructed matrix fails verification (spectrum gap " +
                               std::to_string(out.spectrum_gap) + ", parameter gap " +
                               std::to_string(out.param_gap) + ")");
    return out;
}

BlaschkeReport blaschke_condition(std::span<const Complex> zs)
{
    BlaschkeReport rep;
    for (const auto& z : zs) {
        const double a = std::abs(z);
        if (!(a < 1.0))
            throw ArgumentError("blaschke_condition: point outside the open unit disk");
        rep.partial_sum += 1.0 - a;
        if (!rep.partial_sums.empty() && rep.partial_sum < rep.partial_sums.back())
            rep.nondecreasing = false;
        rep.partial_sums.push_back(rep.partial_sum);
    }
    rep.note = "partial sums over a finite prefix only; convergence of the full series is not decided";
    return rep;
}

} // namespace cmvkit
