#include "cmvkit/opuc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cmvkit {

Poly szego_step(const Poly& phi, int n, Complex alpha)
{
    return phi.shifted_up() - star(phi, n) * std::conj(alpha);
}

MonicOpucChain szego_up(MonicOpucChain chain, Complex alpha)
{
    if (!(std::abs(alpha) < 1.0))
        throw ArgumentError("szego_up: |alpha| must be < 1");
    chain.polys.push_back(szego_step(chain.last(), chain.degree(), alpha));
    chain.alphas.push_back(alpha);
    return chain;
}

MonicOpucChain szego_chain(std::span<const Complex> alphas)
{
    MonicOpucChain chain;
    for (const auto& a : alphas)
        chain = szego_up(std::move(chain), a);
    return chain;
}

std::pair<Complex, Poly> szego_down(const Poly& phi, const Tolerances& tol, bool check_roots)
{
    const int n = phi.degree();
    if (n < 1)
        throw ArgumentError("szego_down: degree must be >= 1");
    if (std::abs(phi.leading() - 1.0) > tol.structural)
        throw ArgumentError("szego_down: polynomial is not monic");
    const Complex alpha = -std::conj(phi[0]);
    if (!(std::abs(alpha) < 1.0))
        throw ArgumentError("szego_down: |Phi(0)| >= 1, zeros are not inside the disk");
    if (check_roots) {
        for (const auto& z : roots(phi, tol))
            if (!(std::abs(z) < 1.0))
                throw ArgumentError("szego_down: zero outside the open unit disk");
    }

    const double rho2 = (1.0 - std::abs(alpha)) * (1.0 + std::abs(alpha));
    // Constant term of phi + conj(alpha) phi^* vanishes; top coefficient is rho^2.
    Poly prev = ((phi + star(phi, n) * std::conj(alpha)).shifted_down() / Complex(rho2)).truncated(n - 1);
    std::vector<Complex> c = prev.coeffs();
    c.resize(static_cast<std::size_t>(n), Complex(0.0));
    c.back() = 1.0;
    return {alpha, Poly(std::move(c))};
}

std::vector<Complex> verblunsky_from_monic(const Poly& p, const Tolerances& tol)
{
    std::vector<Complex> out;
    Poly phi = p;
    while (phi.degree() >= 1) {
        auto [alpha, prev] = szego_down(phi, tol);
        out.push_back(alpha);
        phi = std::move(prev);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

SchurParams khrushchev_params(const Poly& p, const Tolerances& tol)
{
    const auto beta = verblunsky_from_monic(p, tol);
    SchurParams out;
    for (auto it = beta.rbegin(); it != beta.rend(); ++it)
        out.interior.push_back(-std::conj(*it));
    out.terminal = Complex(1.0);
    return out;
}

std::pair<Complex, Poly> extend_one_zero(const Poly& p, Complex z1, const Tolerances& tol)
{
    if (!(std::abs(z1) < 1.0))
        throw ArgumentError("extend_one_zero: prescribed zero outside the open unit disk");
    const int n = p.degree();
    const Complex conj_alpha = z1 * p(z1) / star(p, n)(z1);
    const Complex alpha      = std::conj(conj_alpha);
    if (std::abs(alpha) >= 1.0 - tol.roots)
        throw NumericError("extend_one_zero: coefficient reached the unit circle");
    Poly q = szego_step(p, n, alpha);
    if (std::abs(q(z1)) > tol.roots * std::max(1.0, q.max_abs()))
        throw NumericError("extend_one_zero: extension does not vanish at the prescribed point");
    return {alpha, std::move(q)};
}

namespace {

struct Node
{
    Complex z;
    int multiplicity;
};

std::vector<Node> group_nodes(std::span<const Complex> zs, double radius)
{
    std::vector<Node> nodes;
    for (const auto& c : cluster(zs, radius))
        nodes.push_back({c.value, c.multiplicity});
    return nodes;
}

Poly extend_by(const Poly& p, std::span<const Complex> alphas)
{
    Poly q  = p;
    int deg = p.degree();
    for (const auto& a : alphas)
        q = szego_step(q, deg++, a);
    return q;
}

Eigen::VectorXd interpolation_residual(const Poly& p, const std::vector<Node>& nodes,
                                       std::span<const Complex> alphas)
{
    const Poly q = extend_by(p, alphas);
    Eigen::VectorXd r(2 * static_cast<Eigen::Index>(alphas.size()));
    Eigen::Index i = 0;
    for (const auto& node : nodes)
        for (const auto& c : taylor_coeffs(q, node.z, node.multiplicity)) {
            r(i++) = c.real();
            r(i++) = c.imag();
        }
    return r;
}

std::vector<Complex> to_complex(const Eigen::VectorXd& x)
{
    std::vector<Complex> v(static_cast<std::size_t>(x.size() / 2));
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = {x(2 * static_cast<Eigen::Index>(k)), x(2 * static_cast<Eigen::Index>(k) + 1)};
    return v;
}

struct NewtonOutcome
{
    bool converged = false;
    Eigen::VectorXd x;
    double residual  = 0.0;
    double condition = 0.0;
    int iterations   = 0;
};

NewtonOutcome damped_newton(const Poly& p, const std::vector<Node>& nodes, Eigen::VectorXd x,
                            int max_iterations, double target)
{
    const Eigen::Index dim = x.size();
    auto residual          = [&](const Eigen::VectorXd& v) {
        return interpolation_residual(p, nodes, to_complex(v));
    };
    auto inside = [](const Eigen::VectorXd& v) {
        for (Eigen::Index k = 0; k + 1 < v.size(); k += 2)
            if (std::hypot(v(k), v(k + 1)) >= 1.0 - 1e-6)
                return false;
        return true;
    };

    NewtonOutcome out;
    Eigen::VectorXd r = residual(x);
    Eigen::MatrixXd jac(dim, dim);
    for (int it = 0; it < max_iterations; ++it) {
        out.iterations = it;
        if (r.lpNorm<Eigen::Infinity>() <= target)
            break;
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double h     = 1e-7;
            Eigen::VectorXd xp = x, xm = x;
            xp(j) += h;
            xm(j) -= h;
            jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * h);
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite())
            break;

        double t      = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
            const Eigen::VectorXd cand = x + t * step;
            if (!inside(cand))
                continue;
            const Eigen::VectorXd rc = residual(cand);
            if (rc.norm() < (1.0 - 1e-4 * t) * r.norm()) {
                x        = cand;
                r        = rc;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            break;
    }
    out.x        = x;
    out.residual = r.lpNorm<Eigen::Infinity>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto& sv = svd.singularValues();
    out.condition  = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                             : std::numeric_limits<double>::infinity();
    out.converged  = out.residual <= target;
    return out;
}

} // namespace

ExtensionResult extend_zeros_numeric(const Poly& p, std::span<const Complex> zs,
                                     const ExtensionOptions& opts, const Tolerances& tol)
{
    for (const auto& z : zs)
        if (!(std::abs(z) < 1.0))
            throw ArgumentError("extend_zeros_numeric: prescribed zero outside the open unit disk");
    const int m = static_cast<int>(zs.size());
    ExtensionResult out;
    if (m == 0) {
        out.q = p;
        return out;
    }
    if (m == 1) {
        auto [alpha, q] = extend_one_zero(p, zs[0], tol);
        out.alphas      = {alpha};
        out.residual    = std::abs(q(zs[0]));
        out.q           = std::move(q);
        out.condition   = 1.0;
        return out;
    }

    const auto nodes     = group_nodes(zs, tol.structural);
    const double target  = 1e-13 * std::max(1.0, p.max_abs());
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double best_residual = std::numeric_limits<double>::infinity();
    for (int start = 0; start <= opts.random_starts; ++start) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * m);
        if (start > 0) {
            for (int k = 0; k < m; ++k) {
                const double radius = 0.9 * std::sqrt(unit(rng));
                const double angle  = 2.0 * std::numbers::pi * unit(rng);
                x(2 * k)            = radius * std::cos(angle);
                x(2 * k + 1)        = radius * std::sin(angle);
            }
        }
        const NewtonOutcome res = damped_newton(p, nodes, x, opts.max_iterations, target);
        best_residual           = std::min(best_residual, res.residual);
        if (res.residual <= tol.roots) {
            out.alphas     = to_complex(res.x);
            out.q          = extend_by(p, out.alphas);
            out.residual   = res.residual;
            out.condition  = res.condition;
            out.start      = start;
            out.iterations = res.iterations;
            return out;
        }
    }
    throw NumericError("extend_zeros_numeric: no start converged (best residual " +
                       std::to_string(best_residual) + "); existence is guaranteed, the "
                       "numerical search failed");
}

TttConstruction theorem_ttt_construct(std::span<const Complex> alphas, std::span<const Complex> zs,
                                      Complex gamma, const ExtensionOptions& opts,
                                      const Tolerances& tol)
{
    if (std::abs(std::abs(gamma) - 1.0) > tol.structural)
        throw ArgumentError("theorem_ttt_construct: gamma must be unimodular");
    gamma /= std::abs(gamma);
    const int n = static_cast<int>(alphas.size());

    // beta_k = -gamma conj(alpha_{n-k-1}) makes gamma Phi / Phi^* end with (alphas, gamma).
    std::vector<Complex> beta(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        beta[static_cast<std::size_t>(k)] = -gamma * std::conj(alphas[static_cast<std::size_t>(n - k - 1)]);

    TttConstruction out;
    out.chain     = szego_chain(beta);
    out.extension = extend_zeros_numeric(out.chain.last(), zs, opts, tol);
    for (const auto& a : out.extension.alphas)
        out.chain = szego_up(std::move(out.chain), a);

    const auto& full = out.chain.alphas;
    const int total  = static_cast<int>(full.size());
    for (int j = 0; j < total; ++j)
        out.params.interior.push_back(-gamma * std::conj(full[static_cast<std::size_t>(total - 1 - j)]));
    out.params.terminal = gamma;

    out.b.phase = std::arg(gamma);
    out.b.zeros = total > 0 ? roots(out.chain.last(), tol) : std::vector<Complex>{};
    return out;
}

BlaschkeProduct theorem_ttt_build(std::span<const Complex> alphas, std::span<const Complex> zs,
                                  Complex gamma, const ExtensionOptions& opts, const Tolerances& tol)
{
    return theorem_ttt_construct(alphas, zs, gamma, opts, tol).b;
}

void TrivialMeasure::validate(const Tolerances& tol) const
{
    if (support.size() != weights.size() || support.empty())
        throw ArgumentError("TrivialMeasure: support and weights must be non-empty and aligned");
    double total = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (std::abs(std::abs(support[k]) - 1.0) > tol.roots)
            throw ArgumentError("TrivialMeasure: support point off the unit circle");
        if (!(weights[k] > 0.0))
            throw ArgumentError("TrivialMeasure: weights must be positive");
        total += weights[k];
        for (std::size_t j = 0; j < k; ++j)
            if (std::abs(support[k] - support[j]) <= tol.roots)
                throw ArgumentError("TrivialMeasure: support points are not distinct");
    }
    if (std::abs(total - 1.0) > tol.roots)
        throw ArgumentError("TrivialMeasure: weights do not sum to 1");
}

TrivialMeasure measure_from_blaschke(const BlaschkeProduct& b, const Tolerances& tol)
{
    b.validate(tol);
    const int n   = b.order();
    const Poly p  = b.monic();
    // z b(z) = 1  <=>  e^{i phi} z P(z) - P^*(z) = 0.
    const Poly g  = p.shifted_up() * b.unimodular() - star(p, n);

    TrivialMeasure mu;
    double total = 0.0;
    for (const auto& root : roots(g, tol)) {
        if (std::abs(std::abs(root) - 1.0) > tol.roots)
            throw ConsistencyError("measure_from_blaschke: pole of F is off the unit circle");
        const Complex zeta = root / std::abs(root);
        // mu_k = -1 / (zeta g'(zeta)) with g = 1 - z b(z).
        const Complex bz     = b(zeta);
        const Complex gprime = -bz * (1.0 + zeta * b.log_derivative(zeta));
        const Complex w      = -1.0 / (zeta * gprime);
        if (!(w.real() > 0.0) || std::abs(w.imag()) > tol.roots * std::max(1.0, w.real()))
            throw ConsistencyError("measure_from_blaschke: non-positive weight");
        mu.support.push_back(zeta);
        mu.weights.push_back(w.real());
        total += w.real();
    }
    if (std::abs(total - 1.0) > tol.roots)
        throw ConsistencyError("measure_from_blaschke: weights do not sum to 1");
    for (auto& w : mu.weights)
        w /= total;
    mu.validate(tol);
    return mu;
}

Complex moments(const TrivialMeasure& mu, int n)
{
    Complex s = 0.0;
    for (std::size_t k = 0; k < mu.support.size(); ++k)
        s += mu.weights[k] * std::pow(mu.support[k], -n);
    return s;
}

Complex caratheodory_eval(const TrivialMeasure& mu, Complex z)
{
    if (!(std::abs(z) < 1.0))
        throw ArgumentError("caratheodory_eval: z must lie in the open unit disk");
    Complex s = 0.0;
    for (std::size_t k = 0; k < mu.support.size(); ++k)
        s += mu.weights[k] * (mu.support[k] + z) / (mu.support[k] - z);
    return s;
}

MeasureOpuc opuc_of_measure(const TrivialMeasure& mu, const Tolerances& tol)
{
    mu.validate(tol);
    const int n = mu.size();
    if (n < 2)
        throw ArgumentError("opuc_of_measure: need at least two support points");

    const Eigen::Map<const Vector> zeta(mu.support.data(), n);
    const Eigen::Map<const Eigen::VectorXd> weight(mu.weights.data(), n);
    auto inner = [&](const Vector& f, const Vector& g) {
        return (weight.cast<Complex>().array() * f.array() * g.conjugate().array()).sum();
    };

    // Values on the support and coefficient vectors evolve together.
    std::vector<Vector> values;
    std::vector<Vector> coeffs;
    std::vector<double> norms2;
    MeasureOpuc out;
    Vector zpow = Vector::Ones(n);
    for (int k = 0; k < n; ++k) {
        Vector v = zpow;
        Vector c = Vector::Zero(n);
        c(k)     = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                const Complex proj = inner(v, values[static_cast<std::size_t>(j)]) /
                                     norms2[static_cast<std::size_t>(j)];
                v -= proj * values[static_cast<std::size_t>(j)];
                c -= proj * coeffs[static_cast<std::size_t>(j)];
            }
        }
        const double nrm2 = inner(v, v).real();
        if (!(nrm2 > tol.structural * tol.structural))
            throw NumericError("opuc_of_measure: Gram matrix is numerically singular at degree " +
                               std::to_string(k));
        values.push_back(v);
        coeffs.push_back(c);
        norms2.push_back(nrm2);
        out.polys.emplace_back(std::vector<Complex>(c.data(), c.data() + k + 1));
        out.norms.push_back(std::sqrt(nrm2));
        zpow = (zpow.array() * zeta.array()).matrix();
    }

    double rho_product = 1.0;
    for (int k = 1; k < n; ++k) {
        const Complex a = -std::conj(out.polys[static_cast<std::size_t>(k)][0]);
        out.alphas.push_back(a);
        rho_product *= std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
        out.norm_gap = std::max(out.norm_gap, std::abs(out.norms[static_cast<std::size_t>(k)] - rho_product));
    }
    if (out.norm_gap > tol.roots)
        throw ConsistencyError("opuc_of_measure: norm identity violated");
    return out;
}

std::vector<Complex> verblunsky_from_measure(const TrivialMeasure& mu, const Tolerances& tol)
{
    return opuc_of_measure(mu, tol).alphas;
}

} // namespace cmvkit
