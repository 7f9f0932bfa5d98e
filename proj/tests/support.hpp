#pragma once

// Generators and independent oracles shared by the test binaries.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/LU>

#include "cmvkit/inverse.hpp"

namespace testing {

using cmvkit::Complex;
using cmvkit::Matrix;
using cmvkit::Poly;
using cmvkit::SchurParams;

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

    /// Uniform in the disk of radius r.
    Complex in_disk(double r)
    {
        return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
    }

    Complex unimodular() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

    Complex gaussian() { return {normal_(rng_), normal_(rng_)}; }

    SchurParams params(int n, double r)
    {
        SchurParams p;
        for (int k = 0; k < n; ++k)
            p.interior.push_back(in_disk(r));
        p.terminal = unimodular();
        return p;
    }

    std::vector<Complex> points(int n, double r)
    {
        std::vector<Complex> v;
        for (int k = 0; k < n; ++k)
            v.push_back(in_disk(r));
        return v;
    }

    Poly poly(int degree)
    {
        std::vector<Complex> c;
        for (int k = 0; k <= degree; ++k)
            c.push_back(gaussian());
        return Poly(c);
    }

    Matrix matrix(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = gaussian();
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// e^{i phase} prod (z - z_k)/(1 - conj(z_k) z), written out directly.
inline Complex blaschke_direct(double phase, const std::vector<Complex>& zeros, Complex z)
{
    Complex v = std::polar(1.0, phase);
    for (const auto& a : zeros)
        v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

/// Pointwise Schur iterate: gamma_j are known, so each step is a Mobius map.
inline Complex iterate_point(Complex f, Complex z, Complex gamma)
{
    return (f - gamma) / (z * (1.0 - std::conj(gamma) * f));
}

/// det(z I - m) by LU.
inline Complex det_shifted(const Matrix& m, Complex z)
{
    return (z * Matrix::Identity(m.rows(), m.cols()) - m).determinant();
}

/// Greedy nearest pairing of two flat multisets; worst paired distance.
inline double multiset_gap(std::vector<Complex> have, std::vector<Complex> want)
{
    if (have.size() != want.size())
        return INFINITY;
    double worst = 0.0;
    for (const auto& w : want) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < have.size(); ++j)
            if (std::abs(have[j] - w) < std::abs(have[best] - w))
                best = j;
        worst = std::max(worst, std::abs(have[best] - w));
        have.erase(have.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

inline double max_abs_gap(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size())
        return INFINITY;
    double g = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        g = std::max(g, std::abs(a[k] - b[k]));
    return g;
}

/// Example pattern printed for the nilpotent truncated matrices, with the
/// unimodular entry u at its printed position.
inline Matrix nilpotent_pattern(int n, Complex u)
{
    Matrix t = Matrix::Zero(n, n);
    auto set = [&](int i, int j, Complex v) { t(i - 1, j - 1) = v; };
    if (n == 5) {
        set(2, 4, 1.0);
        set(3, 1, 1.0);
        set(4, 5, u);
        set(5, 3, 1.0);
    } else if (n == 6) {
        set(2, 4, 1.0);
        set(3, 1, 1.0);
        set(4, 6, 1.0);
        set(5, 3, 1.0);
        set(6, 5, u);
    }
    return t;
}

} // namespace testing
