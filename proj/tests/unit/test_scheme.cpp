#include <cmath>
#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "sptp/error.hpp"
#include "sptp/scheme.hpp"

using namespace sptp;

namespace {

std::shared_ptr<const ShishkinMesh> mesh_for(int n, double eps, double tau0 = kDefaultTau0, double left = 0.0,
                                             double right = 1.0) {
    MeshConfig c;
    c.n = n;
    c.tau0 = tau0;
    c.epsilon = Epsilon(eps);
    c.domain_left = left;
    c.domain_right = right;
    return std::make_shared<const ShishkinMesh>(build_mesh(c));
}

ProblemSpec constant_problem(double a, double b, double f) {
    ProblemInputs in;
    in.a = [a](double) { return a; };
    in.b = [b](double) { return b; };
    in.f = [f](double) { return f; };
    in.alpha = 1.0;
    in.beta = b;
    return make_problem(std::move(in));
}

void check_close(double actual, double expected, double rel) {
    CHECK(std::abs(actual - expected) <= rel * std::abs(expected));
}

}  // namespace

TEST_CASE("classification") {
    CHECK(classify(1, 16, 2.0) == StencilKind::Central);
    CHECK(classify(3, 16, -2.0) == StencilKind::Central);
    CHECK(classify(4, 16, 0.5) == StencilKind::MidpointForward);
    CHECK(classify(12, 16, -0.5) == StencilKind::MidpointBackward);
    CHECK(classify(13, 16, -2.0) == StencilKind::Central);
    CHECK(classify(8, 16, 0.0) == StencilKind::MidpointBackward);
    CHECK_THROWS_AS(classify(0, 16, 1.0), InvalidArgument);
    CHECK_THROWS_AS(classify(16, 16, 1.0), InvalidArgument);
}

TEST_CASE("central row without convection is the three-point Laplacian") {
    // tau hits the cap 1/4 on [0, 1], so fine and coarse widths are both 1/16.
    const auto mesh = mesh_for(16, 1.0, 10.0);
    REQUIRE(mesh->fine_width() == test::rel(mesh->coarse_width()));
    const double h = mesh->fine_width();
    const auto row = central_row(2, *mesh, constant_problem(0.0, 1.0, 0.0), Epsilon(1.0));
    CHECK(row.p_l == test::rel(1.0 / (h * h)));
    CHECK(row.p_r == test::rel(1.0 / (h * h)));
    CHECK(row.p_c == test::rel(-2.0 / (h * h) - 1.0));
    CHECK(row.rhs == 0.0);
    CHECK(row.kind == StencilKind::Central);
}

TEST_CASE("central row on the first example") {
    const auto mesh = mesh_for(32, 1e-2);
    const auto row = central_row(1, *mesh, example1(), Epsilon(1e-2));
    // 40-digit evaluation of the closed forms
    check_close(row.p_l, 546.00858422445043768, 1e-13);
    check_close(row.p_c, -1669.0951848044862383, 1e-13);
    check_close(row.p_r, 1119.0866005800358006, 1e-13);
    CHECK(row.rhs == 0.0);
}

TEST_CASE("midpoint forward row on the first example") {
    const auto mesh = mesh_for(32, 1e-2);
    const auto row = midpoint_row(8, *mesh, example1(), Epsilon(1e-2), MidpointDirection::Forward);
    check_close(row.p_l, 92.332482616893658071, 1e-13);
    check_close(row.p_c, -129.75306344217705724, 1e-13);
    check_close(row.p_r, 33.420580825283399172, 1e-13);
    CHECK(row.kind == StencilKind::MidpointForward);
}

TEST_CASE("midpoint rows coincide without convection on a uniform mesh") {
    const auto mesh = mesh_for(16, 1.0, 10.0);
    const auto p = constant_problem(0.0, 3.0, 1.0);
    const auto fwd = midpoint_row(6, *mesh, p, Epsilon(0.5), MidpointDirection::Forward);
    const auto bwd = midpoint_row(6, *mesh, p, Epsilon(0.5), MidpointDirection::Backward);
    const double h = mesh->fine_width();
    CHECK(fwd.p_l == test::rel(bwd.p_l + 1.5));  // backward subtracts b_{i-1}/2 on the left
    CHECK(fwd.p_l == test::rel(0.5 / (h * h)));
    CHECK(bwd.p_r == test::rel(0.5 / (h * h)));
    CHECK(fwd.p_r == test::rel(0.5 / (h * h) - 1.5));
    CHECK(fwd.p_c == test::rel(bwd.p_c));
    CHECK(fwd.rhs == bwd.rhs);
}

TEST_CASE("forward row expands to the direct discretization") {
    const auto p = example2();
    for (double eps : {1e-1, 1e-4, 1e-8}) {
        const auto mesh = mesh_for(64, eps);
        for (int i = 16; i <= 31; ++i) {
            const auto row = midpoint_row(i, *mesh, p, Epsilon(eps), MidpointDirection::Forward);
            const double hl = mesh->h(i), hr = mesh->h(i + 1), hh = mesh->hhat(i);
            const double a_half = 0.5 * (p.a(mesh->x(i)) + p.a(mesh->x(i + 1)));
            const double expected = -eps / (hl * hh) - eps / (hr * hh) - a_half / hr - 0.5 * p.b(mesh->x(i));
            CHECK(std::abs(row.p_c - expected) <= 1e-13 * row.scale());
            CHECK(row.rhs == test::rel(0.5 * (p.f(mesh->x(i)) + p.f(mesh->x(i + 1)))));
        }
    }
}

TEST_CASE("row sums reconstruct the reaction term") {
    for (const auto& p : {example1(), example2()}) {
        for (double eps : {1.0, 1e-2, 1e-6}) {
            const auto mesh = mesh_for(32, eps);
            const auto system = assemble(p, mesh, Epsilon(eps));
            for (int i = 1; i < 32; ++i) {
                const auto row = system.row(i);
                double b = p.b(mesh->x(i));
                if (row.kind == StencilKind::MidpointForward) b = 0.5 * (b + p.b(mesh->x(i + 1)));
                if (row.kind == StencilKind::MidpointBackward) b = 0.5 * (b + p.b(mesh->x(i - 1)));
                CHECK(std::abs(row.p_l + row.p_c + row.p_r + b) <= 1e-13 * row.scale());
            }
        }
    }
}

TEST_CASE("assembled stencil layout") {
    const auto mesh = mesh_for(8, 1e-3);
    const auto system = assemble(example1(), mesh, Epsilon(1e-3));
    CHECK(system.n() == 8);
    CHECK(system.row(1).kind == StencilKind::Central);
    CHECK(system.row(7).kind == StencilKind::Central);
    CHECK(system.row(2).kind == StencilKind::MidpointForward);
    CHECK(system.row(3).kind == StencilKind::MidpointForward);
    CHECK(system.row(4).kind == StencilKind::Central);  // a vanishes at x = 1/2, backward row is not of negative type
    CHECK(system.row(5).kind == StencilKind::MidpointBackward);
    CHECK(system.row(6).kind == StencilKind::MidpointBackward);

    CHECK(system.diag()[0] == 1.0);
    CHECK(system.super()[0] == 0.0);
    CHECK(system.diag()[8] == 1.0);
    CHECK(system.sub()[8] == 0.0);
    CHECK(system.bc_left() == 1.0);
    CHECK(system.bc_right() == 1.0);
    CHECK_THROWS_AS(system.row(0), InvalidArgument);
    CHECK_THROWS_AS(system.row(8), InvalidArgument);
}

TEST_CASE("turning-point row") {
    // eps / H^2 is large enough at eps = 1 for the backward row to keep its signs.
    auto system = assemble(example1(), mesh_for(16, 1.0), Epsilon(1.0));
    CHECK(system.row(8).kind == StencilKind::MidpointBackward);
    system = assemble(example1(), mesh_for(16, 1e-6), Epsilon(1e-6));
    const auto row = system.row(8);
    CHECK(row.kind == StencilKind::Central);
    CHECK(row.p_l == row.p_r);
    const auto backward = midpoint_row(8, system.mesh(), example1(), Epsilon(1e-6), MidpointDirection::Backward);
    CHECK(backward.p_l < 0.0);
}

TEST_CASE("diagonal dominance at eps = 1") {
    const auto mesh = mesh_for(16, 1.0);
    const auto system = assemble(example1(), mesh, Epsilon(1.0));
    for (int i = 1; i < 16; ++i) {
        const auto row = system.row(i);
        CHECK(row.p_c < 0.0);
        CHECK(std::abs(row.p_c) > std::abs(row.p_l) + std::abs(row.p_r));
    }
}

TEST_CASE("assembly is deterministic") {
    const auto mesh = mesh_for(128, 1e-7);
    const auto one = assemble(example2(), mesh, Epsilon(1e-7));
    const auto two = assemble(example2(), mesh, Epsilon(1e-7));
    for (int i = 0; i <= 128; ++i) {
        CHECK(one.sub()[i] == two.sub()[i]);
        CHECK(one.diag()[i] == two.diag()[i]);
        CHECK(one.super()[i] == two.super()[i]);
        CHECK(one.rhs()[i] == two.rhs()[i]);
    }
}

TEST_CASE("upwind and central agree without convection") {
    const auto p = constant_problem(0.0, 2.0, -1.0);
    const auto mesh = mesh_for(32, 1e-3);
    for (int i = 1; i < 32; ++i) {
        const auto u = upwind_row(i, *mesh, p, Epsilon(1e-3));
        const auto c = central_row(i, *mesh, p, Epsilon(1e-3));
        CHECK(u.p_l == c.p_l);
        CHECK(u.p_c == c.p_c);
        CHECK(u.p_r == c.p_r);
        CHECK(u.rhs == c.rhs);
    }
}

TEST_CASE("upwind off-diagonals are positive for every eps") {
    for (const auto& p : {example1(), example2()})
        for (double eps : {1.0, 1e-2, 1e-4, 1e-6, 1e-9, 0x1p-16})
            for (int n : {8, 16, 64, 256, 1024}) {
                const auto system = assemble_upwind(p, mesh_for(n, eps), Epsilon(eps));
                for (int i = 1; i < n; ++i) {
                    const auto row = system.row(i);
                    CHECK(row.p_l > 0.0);
                    CHECK(row.p_r > 0.0);
                    CHECK(row.p_l + row.p_c + row.p_r < 0.0);
                }
            }
}

TEST_CASE("assumption diagnostics") {
    const auto p = example1();
    auto report = check_assumptions(p, *mesh_for(1024, 1e-8, 2.5), Epsilon(1e-8), 2.5);
    CHECK(report.sup_a == test::rel(2.0));
    CHECK(report.sup_b == test::rel(4.0));
    CHECK(report.tau_form_lhs == test::rel(10.0));
    CHECK(report.tau_form_rhs == test::rel(1024.0 / std::log(1024.0)));
    CHECK(report.reaction_lhs == test::rel(8.0 / 1024));
    CHECK(report.convection_ok);
    CHECK(report.reaction_ok);
    CHECK(report.passed());

    report = check_assumptions(p, *mesh_for(8, 1e-8, 2.5), Epsilon(1e-8));
    CHECK(report.tau0 == test::rel(2.5));
    CHECK(report.tau_form_rhs == test::rel(8.0 / std::log(8.0)));
    CHECK(report.mesh_ratio > 1.0);
    CHECK_FALSE(report.convection_ok);
    CHECK_FALSE(report.passed());

    const auto no_reaction = constant_problem(1.0, 0.0, 0.0);
    report = check_assumptions(no_reaction, *mesh_for(16, 1e-2), Epsilon(1e-2));
    CHECK(report.reaction_lhs == 0.0);
    CHECK(report.reaction_ok);
}

TEST_CASE("M-matrix signs wherever the assumptions hold") {
    int checked = 0;
    for (const auto& p : {example1(), example2()})
        for (double eps : {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-8, 1e-9})
            for (int n : {8, 16, 32, 64, 128, 256, 512, 1024}) {
                const auto mesh = mesh_for(n, eps);
                if (!check_assumptions(p, *mesh, Epsilon(eps)).passed()) continue;
                ++checked;
                const auto system = assemble(p, mesh, Epsilon(eps));
                for (int i = 1; i < n; ++i) {
                    const auto row = system.row(i);
                    CAPTURE(eps);
                    CAPTURE(n);
                    CAPTURE(i);
                    CHECK(row.p_l > 0.0);
                    CHECK(row.p_r > 0.0);
                    CHECK(row.p_l + row.p_c + row.p_r < 0.0);
                }
            }
    CHECK(checked > 100);
}

TEST_CASE("operator application and rhs replacement") {
    const auto mesh = mesh_for(16, 1e-2);
    const auto system = assemble(example1(), mesh, Epsilon(1e-2));
    std::vector<double> ones(17, 1.0);
    const auto out = system.apply(ones);
    CHECK(out[0] == 1.0);
    CHECK(out[16] == 1.0);
    for (int i = 1; i < 16; ++i) CHECK(out[i] == test::rel(-4.0));  // row sum is -b

    std::vector<double> rhs(17, 0.0);
    rhs[0] = 2.0;
    const auto swapped = system.with_rhs(rhs);
    CHECK(swapped.bc_left() == 2.0);
    CHECK(swapped.diag()[5] == system.diag()[5]);
    CHECK_THROWS_AS(system.apply(std::vector<double>(5)), InvalidArgument);
    CHECK_THROWS_AS(system.with_rhs(std::vector<double>(5)), InvalidArgument);
}
