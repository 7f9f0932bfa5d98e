#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace cmvkit;
using testing::Gen;

TEST_CASE("first Szego step")
{
    const Complex a(0.2, -0.3);
    const auto chain = szego_chain(std::vector<Complex>{a});
    CHECK(chain.last()[0] == -std::conj(a));
    CHECK(chain.last()[1] == Complex(1.0));
}

TEST_CASE("Szego recursion inverts exactly")
{
    Gen g(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> al;
        for (int k = 0; k < g.integer(1, 12); ++k)
            al.push_back(g.in_disk(0.95));
        const auto chain = szego_chain(al);
        CHECK(testing::max_abs_gap(verblunsky_from_monic(chain.last()), al) <= 1e-10);
        auto [a_last, prev] = szego_down(chain.last());
        CHECK(std::abs(a_last - al.back()) <= 1e-12);
        CHECK(coeff_distance(prev, chain.polys[chain.polys.size() - 2]) <= 1e-12);
    }
}

TEST_CASE("monic polynomials with zeros in the disk have coefficients in the disk")
{
    Gen g(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto zs = g.points(g.integer(1, 10), 0.95);
        for (const auto& a : verblunsky_from_monic(from_roots(zs)))
            CHECK(std::abs(a) < 1.0);
    }
    CHECK_THROWS_AS(szego_down(Poly({Complex(-2.0), Complex(1.0)})), ArgumentError);
    CHECK_THROWS_AS(szego_down(Poly({Complex(0.1), Complex(2.0)})), ArgumentError);
}

TEST_CASE("Khrushchev pattern equals the Schur algorithm on P/P*")
{
    Gen g(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto zs   = g.points(g.integer(1, 10), 0.9);
        const Poly P    = from_roots(zs);
        const auto beta = verblunsky_from_monic(P);
        const auto kh   = khrushchev_params(P);
        const int n     = static_cast<int>(beta.size());
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(kh[j] + std::conj(beta[static_cast<std::size_t>(n - 1 - j)])) <= 1e-15);
        // Independent route: Schur steps on the rational function P / P*.
        RationalSchur f{P, star(P, n), n};
        for (int j = 0; j < n; ++j) {
            auto [gamma, next] = schur_step(f);
            CHECK(std::abs(gamma - kh[j]) <= 1e-10);
            f = next;
        }
    }
}

TEST_CASE("one prescribed zero")
{
    Gen g(34);
    for (int trial = 0; trial < 20; ++trial) {
        const auto chain = szego_chain(g.points(g.integer(0, 6), 0.8));
        const Complex z1 = g.in_disk(0.9);
        auto [alpha, q]  = extend_one_zero(chain.last(), z1);
        CHECK(std::abs(alpha) < 1.0);
        CHECK(std::abs(q(z1)) <= 1e-12);
    }
}

TEST_CASE("several prescribed zeros by Newton")
{
    Gen g(35);
    int converged = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto chain = szego_chain(g.points(g.integer(1, 5), 0.6));
        const auto zs    = g.points(2, 0.6);
        try {
            const auto r = extend_zeros_numeric(chain.last(), zs);
            ++converged;
            for (const auto& z : zs)
                CHECK(std::abs(r.q(z)) <= 1e-8);
            for (const auto& a : r.alphas)
                CHECK(std::abs(a) < 1.0);
            CHECK(r.q.degree() == chain.degree() + 2);
        } catch (const NumericError&) {
        }
    }
    CHECK(converged >= 5);
}

TEST_CASE("double prescribed zero uses the derivative condition")
{
    const auto chain = szego_chain(std::vector<Complex>{Complex(0.1, 0.2), Complex(-0.3, 0.1)});
    const Complex z(0.3, -0.2);
    const std::vector<Complex> zs{z, z};
    const auto r = extend_zeros_numeric(chain.last(), zs);
    CHECK(std::abs(r.q(z)) <= 1e-9);
    CHECK(std::abs(r.q.derivative()(z)) <= 1e-8);
}

TEST_CASE("the multi-start is deterministic")
{
    const auto chain = szego_chain(std::vector<Complex>{Complex(0.5, 0.1)});
    const std::vector<Complex> zs{Complex(0.4, 0.1), Complex(-0.2, 0.5)};
    const auto a = extend_zeros_numeric(chain.last(), zs);
    const auto b = extend_zeros_numeric(chain.last(), zs);
    CHECK(a.alphas == b.alphas);
    CHECK(a.start == b.start);
}

TEST_CASE("prescribed-zero construction ends with the prescribed parameters and vanishes on the set")
{
    Gen g(36);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Complex> al = g.points(g.integer(0, 5), 0.8);
        const Complex gamma     = g.unimodular();
        const auto zs           = g.points(1, 0.8);
        const auto t            = theorem_ttt_construct(al, zs, gamma);
        const int m             = static_cast<int>(zs.size());
        REQUIRE(t.params.size() == static_cast<int>(al.size()) + m);
        for (std::size_t j = 0; j < al.size(); ++j)
            CHECK(std::abs(t.params[m + static_cast<int>(j)] - al[j]) <= 1e-12);
        CHECK(std::abs(*t.params.terminal - gamma) <= 1e-15);
        const auto f = rational_from_schur_params(t.params);
        for (const auto& z : zs)
            CHECK(std::abs(f(z)) <= 1e-10);
        for (const auto& z : circle_samples(8, 0.5))
            CHECK(std::abs(t.b(z) - f(z)) <= 1e-8);
    }
}

TEST_CASE("measure of a Blaschke product")
{
    Gen g(37);
    for (int trial = 0; trial < 10; ++trial) {
        const BlaschkeProduct b{g.uniform(0.0, 6.0), g.points(g.integer(1, 8), 0.8)};
        const auto mu = measure_from_blaschke(b);
        CHECK(mu.size() == b.order() + 1);
        double total = 0.0;
        for (std::size_t k = 0; k < mu.support.size(); ++k) {
            CHECK(mu.weights[k] > 0.0);
            total += mu.weights[k];
            // Support solves z b(z) = 1.
            CHECK(std::abs(mu.support[k] * b(mu.support[k]) - 1.0) <= 1e-8);
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);

        // F from the measure matches (1 + z b)/(1 - z b).
        for (const auto& z : circle_samples(6, 0.5, 0.3))
            CHECK(std::abs(caratheodory_eval(mu, z) - caratheodory_from_schur(b(z), z)) <= 1e-8);
        CHECK(std::abs(moments(mu, 0) - 1.0) <= 1e-12);
    }
}

TEST_CASE("Geronimus loop through the measure")
{
    Gen g(38);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p   = g.params(g.integer(1, 8), 0.8);
        const auto b   = blaschke_from_schur_params(p);
        const auto opu = opuc_of_measure(measure_from_blaschke(b));
        CHECK(testing::max_abs_gap(opu.alphas, p.interior) <= 1e-7);
        CHECK(opu.norm_gap <= 1e-8);
        // Orthogonal polynomials coincide with the Szego chain.
        const auto chain = szego_chain(p.interior);
        for (std::size_t k = 0; k < opu.polys.size(); ++k)
            CHECK(coeff_distance(opu.polys[k], chain.polys[k]) <= 1e-7);
    }
}

TEST_CASE("measure validation")
{
    CHECK_THROWS_AS((TrivialMeasure{{Complex(1.0), Complex(-1.0)}, {0.5, 0.4}}.validate()), ArgumentError);
    CHECK_THROWS_AS((TrivialMeasure{{Complex(0.5), Complex(-1.0)}, {0.5, 0.5}}.validate()), ArgumentError);
    CHECK_NOTHROW((TrivialMeasure{{Complex(1.0), Complex(-1.0)}, {0.5, 0.5}}.validate()));
}
