#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "topospec/exterior.hpp"
#include "topospec/quadrature.hpp"

using namespace topospec;

namespace {
constexpr double kPi = std::numbers::pi;

Point pt(double a, double b = 0.0, double c = 0.0) {
    Point p{};
    p[0] = a;
    p[1] = b;
    p[2] = c;
    return p;
}
} // namespace

TEST_CASE("partial_derivative: polynomial, constant, sine") {
    ScalarField sq = [](std::span<const double> x) { return x[0] * x[0]; };
    Point x = pt(1.0);
    CHECK(partial_derivative(sq, {x.data(), 1}, 0) == doctest::Approx(2.0).epsilon(1e-9));

    ScalarField c7 = [](std::span<const double>) { return 7.0; };
    CHECK(partial_derivative(c7, {x.data(), 1}, 0) == 0.0);

    ScalarField sine = [](std::span<const double> x) { return std::sin(x[0]); };
    Point origin = pt(0.0);
    const double d4 = partial_derivative(sine, {origin.data(), 1}, 0,
                                         DiffSpec{4, 1e-3, 1e-3});
    CHECK(std::fabs(d4 - std::cos(0.0)) < 1e-10);
}

TEST_CASE("partial_derivative: non-finite evaluation is reported") {
    ScalarField bad = [](std::span<const double> x) {
        return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0];
    };
    Point x = pt(0.5);
    CHECK_THROWS_AS(partial_derivative(bad, {x.data(), 1}, 0), NonFiniteEvaluation);
}

TEST_CASE("exterior_derivative: coordinate examples") {
    // w = x^0 dx^1 on a 2-chart -> dw = dx^0 ^ dx^1
    PFormField w(2, 1, [](std::span<const double> x, std::span<double> out) {
        out[0] = 0.0;
        out[1] = x[0];
    });
    Point x = pt(0.3, 0.7);
    double dw = 0.0;
    exterior_derivative(w, {x.data(), 2}, {&dw, 1});
    CHECK(dw == doctest::Approx(1.0).epsilon(1e-9));

    // w = df for f = x^0 x^1 -> dw = 0 (d.d = 0)
    ScalarField f = [](std::span<const double> x) { return x[0] * x[1]; };
    PFormField df = exterior_derivative_field(scalar_as_0form(2, f));
    double ddf = 0.0;
    exterior_derivative(df, {x.data(), 2}, {&ddf, 1});
    CHECK(std::fabs(ddf) < 1e-7);
}

TEST_CASE("exterior_derivative: monopole potential") {
    // w = g(1 - cos theta) dphi, g = 0.5; dw_(theta,phi) = g sin theta
    const double g = 0.5;
    PFormField w(2, 1, [g](std::span<const double> x, std::span<double> out) {
        out[0] = 0.0;
        out[1] = g * (1.0 - std::cos(x[0]));
    });
    Point x = pt(kPi / 2, 1.0);
    double dw = 0.0;
    exterior_derivative(w, {x.data(), 2}, {&dw, 1});
    CHECK(dw == doctest::Approx(0.5 * std::sin(kPi / 2)).epsilon(1e-8));
}

TEST_CASE("d.d = 0 for scalar fields at random points") {
    ScalarField f = [](std::span<const double> x) {
        return std::sin(x[0] * x[1]) + std::exp(0.2 * x[2]) * x[0];
    };
    PFormField df = exterior_derivative_field(scalar_as_0form(3, f));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::array<double, 3> dd{};
    for (int i = 0; i < 25; ++i) {
        Point x = pt(u(rng), u(rng), u(rng));
        exterior_derivative(df, {x.data(), 3}, {dd.data(), 3});
        for (double c : dd) CHECK(std::fabs(c) < 1e-6);
    }
}

TEST_CASE("wedge: coordinate examples") {
    // dx ^ dy on a 2-chart
    std::array<double, 2> dx{1.0, 0.0}, dy{0.0, 1.0};
    double out = 0.0;
    wedge(2, 1, {dx.data(), 2}, 1, {dy.data(), 2}, {&out, 1});
    CHECK(out == 1.0);

    // u ^ u = 0 exactly
    std::array<double, 3> u3{0.3, -1.2, 0.7};
    std::array<double, 3> uu{};
    wedge(3, 1, {u3.data(), 3}, 1, {u3.data(), 3}, {uu.data(), 3});
    for (double c : uu) CHECK(c == 0.0);

    // (a dx) ^ (b dy + c dz) = ab dx^dy + ac dx^dz
    std::array<double, 3> adx{2.0, 0.0, 0.0}, bc{0.0, 3.0, 5.0};
    std::array<double, 3> prod{};
    wedge(3, 1, {adx.data(), 3}, 1, {bc.data(), 3}, {prod.data(), 3});
    CHECK(prod[0] == 6.0);  // (0,1)
    CHECK(prod[1] == 10.0); // (0,2)
    CHECK(prod[2] == 0.0);  // (1,2)
}

TEST_CASE("wedge: graded antisymmetry u^v = (-1)^pq v^u") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int dim = 4;
    for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
        std::vector<double> a(binomial(dim, p)), b(binomial(dim, q));
        for (auto& v : a) v = u(rng);
        for (auto& v : b) v = u(rng);
        std::vector<double> ab(binomial(dim, p + q)), ba(binomial(dim, p + q));
        wedge(dim, p, {a.data(), a.size()}, q, {b.data(), b.size()},
              {ab.data(), ab.size()});
        wedge(dim, q, {b.data(), b.size()}, p, {a.data(), a.size()},
              {ba.data(), ba.size()});
        const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
        for (size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == sign * ba[i]);
    }
}

TEST_CASE("wedge: degree overflow") {
    std::array<double, 3> a{1.0, 2.0, 3.0};
    std::array<double, 1> out{};
    CHECK_THROWS_AS(wedge(3, 2, {a.data(), 3}, 2, {a.data(), 3}, {out.data(), 1}),
                    DegreeOverflow);
}

TEST_CASE("integrate: constant over the unit square") {
    PFormField one(2, 2, [](std::span<const double>, std::span<double> out) {
        out[0] = 1.0;
    });
    Chart box(2, {{0.0, 1.0}, {0.0, 1.0}});
    auto r = integrate(one, box, QuadratureSpec{16, 2, 1e-8});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.converged);
}

TEST_CASE("integrate: sin(theta) d theta ^ d phi over the sphere box") {
    PFormField w(2, 2, [](std::span<const double> x, std::span<double> out) {
        out[0] = std::sin(x[0]);
    });
    Chart box(2, {{0.0, kPi}, {0.0, 2.0 * kPi}});
    auto r = integrate(w, box, QuadratureSpec{64, 3, 1e-8});
    CHECK(std::fabs(r.value - 4.0 * kPi) < 1e-8);
    CHECK(r.converged);
}

TEST_CASE("integrate: empty region raises EmptyDomain") {
    PFormField one(2, 2, [](std::span<const double>, std::span<double> out) {
        out[0] = 1.0;
    });
    Chart box(2, {{0.0, 1.0}, {0.0, 1.0}});
    box.region = [](std::span<const double>) { return false; };
    CHECK_THROWS_AS(integrate(one, box, QuadratureSpec{8, 1, 1e-8}), EmptyDomain);
}

TEST_CASE("integrate: region masking keeps passing nodes only") {
    PFormField one(2, 2, [](std::span<const double>, std::span<double> out) {
        out[0] = 1.0;
    });
    Chart box(2, {{0.0, 1.0}, {0.0, 1.0}});
    box.region = [](std::span<const double> x) { return x[0] < 0.5; };
    auto r = integrate(one, box, QuadratureSpec{64, 3, 1e-3});
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("quadrature exactness: polynomials up to degree 2n-1") {
    // n = 8 integrates x^15 exactly on [0,1]: integral 1/16
    PFormField poly(1, 1, [](std::span<const double> x, std::span<double> out) {
        out[0] = std::pow(x[0], 15);
    });
    Chart box(1, {{0.0, 1.0}});
    auto r = integrate(poly, box, QuadratureSpec{8, 1, 1e-8});
    CHECK(std::fabs(r.value - 1.0 / 16.0) < 1e-12 / 16.0 + 1e-15);
}

TEST_CASE("orientation flips the sign of the integral") {
    PFormField w(2, 2, [](std::span<const double> x, std::span<double> out) {
        out[0] = 1.0 + x[0];
    });
    Chart box(2, {{0.0, 1.0}, {0.0, 1.0}});
    auto a = integrate(w, box, QuadratureSpec{8, 1, 1e-8});
    std::array<int, 2> swapped{1, 0};
    box.set_orientation({swapped.data(), 2});
    auto b = integrate(w, box, QuadratureSpec{8, 1, 1e-8});
    CHECK(a.value == -b.value);
}

TEST_CASE("determinism: repeated and parallel runs are bit-identical") {
    PFormField w(2, 2, [](std::span<const double> x, std::span<double> out) {
        out[0] = std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + x[0];
    });
    Chart box(2, {{0.0, 2.0}, {0.0, 1.5}});
    QuadratureSpec spec{48, 2, 1e-8};
    auto a = integrate(w, box, spec, 1);
    auto b = integrate(w, box, spec, 1);
    auto c = integrate(w, box, spec, 4);
    CHECK(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.value, &c.value, sizeof(double)) == 0);
}

TEST_CASE("gauss-legendre rules are symmetric and normalized") {
    for (int n : {5, 16, 64}) {
        const auto& rule = gauss_legendre(n);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += rule.weights[i];
            CHECK(rule.nodes[i] == -rule.nodes[n - 1 - i]);
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    }
}
