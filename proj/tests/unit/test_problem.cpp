#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "sptp/error.hpp"
#include "sptp/problem.hpp"
#include "sptp/special.hpp"

using namespace sptp;

TEST_CASE("built-in examples are admissible") {
    CHECK(validate(example1(), 101).empty());
    CHECK(validate(example2(), 101).empty());
    CHECK(validate(example1(), 3).empty());

    const auto p = example1();
    CHECK(p.alpha == 2.0);
    CHECK(p.beta == 4.0);
    CHECK(p.domain_left == 0.0);
    CHECK(p.domain_right == 1.0);
}

TEST_CASE("zero reaction violates the reaction bound at every sample") {
    ProblemInputs in;
    in.a = [](double x) { return -2.0 * (2.0 * x - 1.0); };
    in.b = [](double) { return 0.0; };
    in.f = [](double) { return 0.0; };
    const auto p = make_problem(std::move(in));
    CHECK(p.beta == 0.0);

    const auto violations = validate(p, 101);
    int reaction = 0;
    for (const auto& v : violations) reaction += v.kind == ViolationKind::ReactionBound;
    CHECK(reaction == 101);
    CHECK(violations.size() == 101);
}

TEST_CASE("reversed convection is an interior-layer sign pattern") {
    ProblemInputs in;
    in.a = [](double x) { return 2.0 * (2.0 * x - 1.0); };
    in.b = [](double) { return 4.0; };
    in.f = [](double) { return 0.0; };
    const auto violations = validate(make_problem(std::move(in)), 101);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::SignPattern);
    CHECK(violations[0].x == test::rel(0.5, 0.02));
    CHECK(std::string(to_string(violations[0].kind)) == "sign pattern");
}

TEST_CASE("validate flags missing and repeated turning points and weak endpoints") {
    ProblemInputs none;
    none.a = [](double) { return 1.0; };
    none.b = [](double) { return 1.0; };
    none.f = [](double) { return 0.0; };
    auto v = validate(make_problem(std::move(none)), 11);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::SignPattern);

    ProblemInputs twice;
    twice.a = [](double x) { return std::cos(3.0 * 3.14159265358979 * x); };
    twice.b = [](double) { return 1.0; };
    twice.f = [](double) { return 0.0; };
    v = validate(make_problem(std::move(twice)), 101);
    REQUIRE(!v.empty());
    CHECK(v[0].kind == ViolationKind::SignPattern);

    ProblemInputs weak;
    weak.a = [](double x) { return -2.0 * (2.0 * x - 1.0); };
    weak.b = [](double) { return 4.0; };
    weak.f = [](double) { return 0.0; };
    weak.alpha = 3.0;
    v = validate(make_problem(std::move(weak)), 101);
    REQUIRE(v.size() == 2);
    CHECK(v[0].kind == ViolationKind::ConvectionBound);
    CHECK(v[0].x == 0.0);
    CHECK(v[1].x == 1.0);

    CHECK_THROWS_AS(validate(example1(), 2), InvalidArgument);
}

TEST_CASE("alpha and beta defaults") {
    ProblemInputs in;
    in.domain_left = -1.0;
    in.domain_right = 1.0;
    in.a = [](double x) { return -3.0 * x - 0.5 * x * x; };
    in.b = [](double x) { return 2.0 + x * x; };
    in.f = [](double) { return 0.0; };
    const auto p = make_problem(std::move(in));
    CHECK(p.alpha == test::rel(2.5));  // min(|a(-1)|, |a(1)|) = min(2.5, 3.5)
    CHECK(p.beta == test::rel(2.0));
    CHECK(validate(p).empty());
}

TEST_CASE("make_problem rejects incomplete inputs") {
    ProblemInputs in;
    CHECK_THROWS_AS(make_problem(in), InvalidArgument);
    in.a = in.b = in.f = [](double) { return 1.0; };
    in.domain_left = 1.0;
    in.domain_right = 0.0;
    CHECK_THROWS_AS(make_problem(in), InvalidArgument);
}

TEST_CASE("epsilon range") {
    CHECK(Epsilon(1.0).value() == 1.0);
    CHECK(Epsilon(1e-9).value() == 1e-9);
    CHECK_THROWS_AS(Epsilon(0.0), InvalidArgument);
    CHECK_THROWS_AS(Epsilon(-1e-3), InvalidArgument);
    CHECK_THROWS_AS(Epsilon(1.5), InvalidArgument);
    CHECK_THROWS_AS(Epsilon(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
}

TEST_CASE("example1 exact solution") {
    const auto& u = *example1().exact;
    for (double eps : {1.0, 1e-3, 1e-9}) {
        CHECK(u(0.0, eps) == 1.0);
        CHECK(u(1.0, eps) == 1.0);
    }
    // 40-digit value of exp(-1)
    CHECK(u(0.5, 0.5) == test::rel(0.36787944117144233, 1e-15));
    CHECK(u(0.5, 1e-9) == 0.0);
}

TEST_CASE("example2 exact solution") {
    const auto& u = *example2().exact;
    for (double eps : {1.0, 0.1, 1e-4, 1e-9, 0x1p-16}) {
        CHECK(u(0.0, eps) == test::rel(1.0, 1e-15));
        CHECK(u(1.0, eps) == test::rel(1.0, 1e-15));
    }
    // 40-digit evaluation of the closed form at x = 1/4, eps = 1/10
    CHECK(u(0.25, 0.1) == test::rel(-0.47383752050127283, 1e-14));
    CHECK(std::isfinite(u(0.5, 1e-9)));
}

TEST_CASE("exact solutions satisfy the differential equation away from the layers") {
    for (const auto& p : {example1(), example2()}) {
        for (double eps : {1.0, 1e-1, 1e-2}) {
            for (double x : {0.4, 0.5, 0.6}) {
                auto u = [&](double s) { return (*p.exact)(s, eps); };
                const auto [d1, d2] = test::derivatives(u, x, 1e-3);
                const double lhs = eps * d2 + p.a(x) * d1 - p.b(x) * u(x);
                const double f = p.f(x);
                CAPTURE(p.id);
                CAPTURE(eps);
                CAPTURE(x);
                CHECK(std::abs(lhs - f) <= 1e-6 * std::max(1.0, std::abs(f)));
            }
        }
    }
}

TEST_CASE("erf values") {
    CHECK(sptp::erf(0.0) == 0.0);
    CHECK(sptp::erf(1.0) == test::rel(0.8427007929497149, 1e-15));
    CHECK(sptp::erf(10.0) == 1.0);
    CHECK(sptp::erf(-10.0) == -1.0);
    CHECK(sptp::erf(6.0000001) == 1.0);
    CHECK(std::signbit(sptp::erf(-0.0)));
}

TEST_CASE("erf against the positive-term series") {
    for (int k = -600; k <= 600; ++k) {
        const double z = k * 0.01;
        const auto expected = static_cast<double>(test::erf_series(z));
        CAPTURE(z);
        if (z == 0.0) {
            CHECK(sptp::erf(z) == 0.0);
        } else {
            CHECK(std::abs(sptp::erf(z) - expected) <= 1e-14 * std::abs(expected));
        }
    }
}

TEST_CASE("erf is odd to the bit") {
    for (double z = 1e-300; z < 7.0; z *= 1.7) CHECK(sptp::erf(-z) == -sptp::erf(z));
}

TEST_CASE("polynomial evaluation") {
    const Polynomial p({1.0, -2.0, 3.0});
    CHECK(p(0.0) == 1.0);
    CHECK(p(2.0) == 9.0);
    CHECK(Polynomial{}(5.0) == 0.0);
}
