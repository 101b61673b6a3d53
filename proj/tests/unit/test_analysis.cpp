#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "sptp/analysis.hpp"
#include "sptp/error.hpp"

using namespace sptp;

namespace {

const std::vector<double> kSmallEps{1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
const std::vector<int> kAllNs(kDefaultNs.begin(), kDefaultNs.end());

}  // namespace

TEST_CASE("pointwise error") {
    const auto p = example1();
    auto solution = solve_problem(p, {SchemeKind::Hybrid, 1e-2, 16, kDefaultTau0});
    for (std::size_t i = 0; i < solution.values.size(); ++i)
        solution.values[i] = (*p.exact)(solution.mesh->x(static_cast<int>(i)), 1e-2);
    CHECK(max_pointwise_error(solution, *p.exact) == 0.0);

    solution.values[3] += 0.25;
    CHECK(max_pointwise_error(solution, *p.exact) == test::rel(0.25));

    solution.values.pop_back();
    CHECK_THROWS_AS(max_pointwise_error(solution, *p.exact), InvalidArgument);
}

TEST_CASE("pointwise error on the built-in examples") {
    const auto e1 = solve_problem(example1(), {SchemeKind::Hybrid, 1e-8, 64, kDefaultTau0});
    CHECK(max_pointwise_error(e1, *example1().exact) == test::rel(4.3120e-3, 1e-4));
    const auto e2 = solve_problem(example2(), {SchemeKind::Hybrid, 1e-9, 16, kDefaultTau0});
    CHECK(max_pointwise_error(e2, *example2().exact) == test::rel(8.0701e-2, 1e-4));
}

TEST_CASE("double-mesh error") {
    const auto p = example1();
    const auto coarse = solve_problem(p, {SchemeKind::Hybrid, 1e-8, 64, kDefaultTau0});

    DiscreteSolution fine;
    fine.mesh = std::make_shared<const ShishkinMesh>(refine_nested(*coarse.mesh));
    fine.epsilon = 1e-8;
    fine.values = solve_values(assemble(p, fine.mesh, Epsilon(1e-8)));
    const double estimate = double_mesh_error(coarse, fine);
    const double exact = max_pointwise_error(coarse, *p.exact);
    CHECK(estimate > exact / 3.0);
    CHECK(estimate < exact * 3.0);

    DiscreteSolution injected = fine;
    for (int i = 0; i <= 64; ++i) injected.values[2 * i] = coarse.values[i];
    CHECK(double_mesh_error(coarse, injected) == 0.0);

    const auto rebuilt = solve_problem(p, {SchemeKind::Hybrid, 1e-8, 128, kDefaultTau0});
    CHECK_THROWS_AS(double_mesh_error(coarse, rebuilt), NonNestedMesh);
    CHECK_THROWS_AS(double_mesh_error(coarse, coarse), NonNestedMesh);
}

TEST_CASE("observed order") {
    CHECK(observed_order(4.0, 1.0) == 2.0);
    CHECK(observed_order(2.6900e-2, 1.1508e-2) == test::rel(1.2249, 5e-4 / 1.2249));
    CHECK(observed_order(8.0701e-2, 3.4525e-2) == test::rel(1.2250, 5e-4 / 1.2250));
    CHECK_THROWS_AS(observed_order(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(observed_order(1.0, -1.0), InvalidArgument);
}

TEST_CASE("report layout") {
    const auto eps = std::vector<double>(kPowerOfTenEpsilons.begin(), kPowerOfTenEpsilons.end());
    const auto report = run_convergence(example1(), eps, kAllNs, {});
    CHECK(report.problem_id == "example1");
    CHECK(report.mode == ErrorMode::Exact);
    CHECK(report.entries.size() == 70);
    for (std::size_t e = 0; e < 10; ++e)
        for (std::size_t k = 0; k < 7; ++k) {
            const auto& entry = report.at(e, k);
            CHECK(entry.epsilon == eps[e]);
            CHECK(entry.n == kAllNs[k]);
            CHECK(entry.error >= 0.0);
            CHECK(entry.order.has_value() == (k + 1 < 7));
            CHECK(entry.tau0 == kDefaultTau0);
        }
    for (std::size_t k = 0; k < 7; ++k) {
        double worst = 0.0;
        for (std::size_t e = 0; e < 10; ++e) worst = std::max(worst, report.at(e, k).error);
        CHECK(report.uniform_rows.at(kAllNs[k]) == worst);
    }
    CHECK_THROWS_AS(report.at(10, 0), InvalidArgument);
}

TEST_CASE("single cell report") {
    const std::vector<double> eps{1e-3};
    const std::vector<int> ns{32};
    const auto report = run_convergence(example2(), eps, ns, {});
    REQUIRE(report.entries.size() == 1);
    CHECK_FALSE(report.entries[0].order.has_value());
    CHECK(report.uniform_rows.size() == 1);
}

TEST_CASE("orders only between doubled meshes") {
    const std::vector<double> eps{1e-3};
    const std::vector<int> ns{16, 32, 48, 96};
    const auto report = run_convergence(example1(), eps, ns, {});
    CHECK(report.at(0, 0).order.has_value());
    CHECK_FALSE(report.at(0, 1).order.has_value());
    CHECK(report.at(0, 2).order.has_value());
    CHECK_FALSE(report.at(0, 3).order.has_value());
}

TEST_CASE("grid validation") {
    const std::vector<double> eps{1e-3};
    const std::vector<double> none;
    CHECK_THROWS_AS(run_convergence(example1(), eps, std::vector<int>{10, 20}, {}), InvalidArgument);
    CHECK_THROWS_AS(run_convergence(example1(), eps, std::vector<int>{32, 16}, {}), InvalidArgument);
    CHECK_THROWS_AS(run_convergence(example1(), none, std::vector<int>{16}, {}), InvalidArgument);
    CHECK_THROWS_AS(run_convergence(example1(), eps, std::vector<int>{}, {}), InvalidArgument);
    CHECK_THROWS_AS(run_convergence(example1(), std::vector<double>{2.0}, std::vector<int>{16}, {}),
                    InvalidArgument);
}

TEST_CASE("double-mesh mode and missing exact solutions") {
    auto p = example1();
    p.exact.reset();
    const std::vector<double> eps{1e-4, 1e-8};
    const std::vector<int> ns{64, 128, 256};
    const auto estimated = run_convergence(p, eps, ns, {});
    CHECK(estimated.mode == ErrorMode::DoubleMesh);

    ConvergenceOptions exact_mode;
    exact_mode.mode = ErrorMode::Exact;
    CHECK_THROWS_AS(run_convergence(p, eps, ns, exact_mode), MissingExactSolution);

    const auto reference = run_convergence(example1(), eps, ns, exact_mode);
    for (std::size_t e = 0; e < 2; ++e)
        for (std::size_t k = 0; k < 3; ++k) {
            const double ratio = estimated.at(e, k).error / reference.at(e, k).error;
            CHECK(ratio > 1.0 / 3.0);
            CHECK(ratio < 3.0);
        }
}

TEST_CASE("residual checking records the residual") {
    ConvergenceOptions options;
    options.residual_check = true;
    const auto report = run_convergence(example2(), std::vector<double>{1e-6}, std::vector<int>{64}, options);
    REQUIRE(report.entries[0].residual.has_value());
    CHECK(*report.entries[0].residual >= 0.0);
}

TEST_CASE("errors stabilise as eps decreases") {
    for (const auto& p : {example1(), example2()}) {
        std::vector<double> eps{1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
        const auto report = run_convergence(p, eps, kAllNs, {});
        for (std::size_t e = 0; e + 1 < eps.size(); ++e)
            for (std::size_t k = 0; k < kAllNs.size(); ++k) {
                const double a = report.at(e, k).error, b = report.at(e + 1, k).error;
                CAPTURE(p.id);
                CAPTURE(eps[e]);
                CAPTURE(kAllNs[k]);
                CHECK(std::abs(a - b) / a <= 0.05);
            }
    }
}

TEST_CASE("errors decrease under refinement") {
    const auto eps = std::vector<double>(kPowerOfTenEpsilons.begin(), kPowerOfTenEpsilons.end());
    for (const auto& p : {example1(), example2()}) {
        const auto report = run_convergence(p, eps, kAllNs, {});
        for (std::size_t e = 0; e < eps.size(); ++e)
            for (std::size_t k = 0; k + 1 < kAllNs.size(); ++k)
                CHECK(report.at(e, k + 1).error < report.at(e, k).error);
    }
}

TEST_CASE("hybrid beats upwind in the layer regime") {
    const std::vector<double> eps{1e-9};
    const std::vector<int> ns{64, 128, 256, 512, 1024};
    ConvergenceOptions upwind;
    upwind.scheme = SchemeKind::Upwind;
    const auto h = run_convergence(example1(), eps, ns, {});
    const auto u = run_convergence(example1(), eps, ns, upwind);
    CHECK(u.scheme == SchemeKind::Upwind);
    for (std::size_t k = 0; k < ns.size(); ++k) CHECK(h.at(0, k).error < u.at(0, k).error);
    const double order = *u.at(0, 0).order;
    CHECK(order >= 0.55);
    CHECK(order <= 1.1);
}

TEST_CASE("order regimes") {
    const std::vector<double> eps{1.0, 1e-4, 1e-6, 1e-9};
    const std::vector<int> ns{512, 1024};
    const auto report = run_convergence(example1(), eps, ns, {});
    const double smooth = *report.at(0, 0).order;
    CHECK(smooth >= 0.95);
    CHECK(smooth <= 1.05);
    for (std::size_t e = 1; e < eps.size(); ++e) CHECK(*report.at(e, 0).order >= 1.55);
}

TEST_CASE("power-of-two eps values") {
    const std::vector<double> eps(kPowerOfTwoEpsilons.begin(), kPowerOfTwoEpsilons.end());
    const auto report = run_convergence(example2(), eps, std::vector<int>{16}, {});
    CHECK(report.at(1, 0).error == test::rel(8.0697e-2, 1e-4));
}
