#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace cmvkit;
using testing::Gen;

namespace {

// f from its parameters by unwinding the Mobius steps from the terminal.
Complex unwind(const SchurParams& p, Complex z)
{
    Complex f = *p.terminal;
    for (int k = p.size() - 1; k >= 0; --k)
        f = (p[k] + z * f) / (1.0 + std::conj(p[k]) * z * f);
    return f;
}

} // namespace

TEST_CASE("characteristic polynomial of a Hessenberg matrix")
{
    Matrix h = Matrix::Zero(3, 3);
    h << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.0, 7.0, 8.0;
    const Poly p = hessenberg_charpoly(h);
    for (const Complex z : {Complex(0.0), Complex(1.0, 1.0), Complex(-2.0, 0.5)})
        CHECK(std::abs(p(z) - testing::det_shifted(h, z)) <= 1e-10);
}

TEST_CASE("characteristic polynomial of dense matrices agrees with LU determinants")
{
    Gen g(51);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = g.matrix(g.integer(1, 8));
        const Poly p   = charpoly(m);
        CHECK(p.degree() == m.rows());
        CHECK(std::abs(p[p.degree()] - 1.0) <= 1e-12);
        for (const auto& z : g.points(4, 1.0))
            CHECK(std::abs(p(z) - testing::det_shifted(m, z)) <= 1e-9 * std::pow(1.0 + m.norm(), m.rows()));
    }
}

TEST_CASE("principal blocks of the CMV matrix have the Szego polynomials as determinant")
{
    Gen g(52);
    for (int trial = 0; trial < 10; ++trial) {
        const auto c = assemble_cmv(g.params(10, 0.9));
        for (int n = 1; n <= 8; ++n) {
            const auto r = charpoly_check(c, n);
            CHECK(r.gap <= 1e-10);
            // Oracle: LU determinant against the recursion polynomial.
            const Matrix block = c.dense.topLeftCorner(n, n);
            const Complex z(0.3, -0.4);
            CHECK(std::abs(testing::det_shifted(block, z) - r.phi(z)) <= 1e-10);
        }
    }
}

TEST_CASE("resolvent route reproduces the Schur function")
{
    Gen g(53);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = g.params(g.integer(0, 10), 0.9);
        const auto c = assemble_cmv(p);
        for (const auto& z : interior_samples(16))
            CHECK(std::abs(charfun_schur(c, z) - unwind(p, z)) <= 1e-8);
        CHECK(std::abs(charfun_schur(c, 0.0) - (p.size() > 0 ? p[0] : *p.terminal)) <= 1e-15);
        if (p.size() > 0) {
            const auto t = truncate(c);
            const Complex z(0.1, 0.2);
            CHECK(std::abs(charfun_schur(t, z) - unwind(p, z)) <= 1e-8);
        }
    }
}

TEST_CASE("eigenvalues of the truncation are the zeros of the Schur function")
{
    Gen g(54);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = g.params(g.integer(1, 10), 0.9);
        const auto s = spectrum(truncated_cmv(p));
        CHECK(s.eigenvalues.size() == static_cast<std::size_t>(p.size()));
        CHECK(s.all_in_disk);
        for (const auto& z : s.eigenvalues) {
            CHECK(std::abs(z) < 1.0);
            CHECK(std::abs(unwind(p, z)) <= 1e-7);
        }
        for (double r : s.residuals)
            CHECK(r <= 1e-10);
    }
}

TEST_CASE("nilpotent example has the zero eigenvalue with full multiplicity")
{
    const auto s = spectrum(testing::nilpotent_pattern(6, 1.0));
    REQUIRE(s.clustered.size() == 1);
    CHECK(s.clustered[0].multiplicity == 6);
    CHECK(std::abs(s.clustered[0].value) <= 1e-2);
    CHECK(s.max_modulus <= 1e-2);
}

TEST_CASE("characteristic functions of submatrices are the Schur iterates")
{
    Gen g(55);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = truncated_cmv(g.params(g.integer(4, 10), 0.9), trial % 2 == 1);
        for (int k = 1; k <= 3; ++k) {
            const auto r = schur_iterate_check(t, k, 16);
            CHECK(r.samples == 16);
            CHECK(r.gap <= 1e-8);
        }
    }
}

TEST_CASE("sample points are inside the disk and distinct")
{
    const auto pts = interior_samples(16);
    REQUIRE(pts.size() == 16);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(pts[i]) < 1.0);
        CHECK(std::abs(pts[i]) > 0.0);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(std::abs(pts[i] - pts[j]) > 1e-3);
    }
}
