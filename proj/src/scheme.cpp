#include "sptp/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sptp/error.hpp"

namespace sptp {

namespace {

void check_interior(int i, int n) {
    if (i < 1 || i > n - 1)
        throw InvalidArgument("row index " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
}

// Coefficients and widths around node i.
struct Local {
    double h_left;   // h_i
    double h_right;  // h_{i+1}
    double hhat;
    double a[3];     // a_{i-1}, a_i, a_{i+1}
    double b[3];
    double f[3];
};

Local gather(int i, const ShishkinMesh& mesh, const ProblemSpec& problem) {
    check_interior(i, mesh.n());
    Local local{};
    local.h_left = mesh.h(i);
    local.h_right = mesh.h(i + 1);
    local.hhat = mesh.hhat(i);
    for (int k = 0; k < 3; ++k) {
        const double x = mesh.x(i - 1 + k);
        local.a[k] = problem.a(x);
        local.b[k] = problem.b(x);
        local.f[k] = problem.f(x);
    }
    return local;
}

StencilRow central(const Local& c, double eps) {
    StencilRow row;
    row.kind = StencilKind::Central;
    row.p_l = eps / (c.h_left * c.hhat) - c.a[1] / (2.0 * c.hhat);
    row.p_r = eps / (c.h_right * c.hhat) + c.a[1] / (2.0 * c.hhat);
    row.p_c = -row.p_l - row.p_r - c.b[1];
    row.rhs = c.f[1];
    return row;
}

StencilRow midpoint(const Local& c, double eps, MidpointDirection direction) {
    StencilRow row;
    if (direction == MidpointDirection::Forward) {
        const double a_half = 0.5 * (c.a[1] + c.a[2]);
        row.kind = StencilKind::MidpointForward;
        row.p_l = eps / (c.h_left * c.hhat);
        row.p_r = eps / (c.h_right * c.hhat) + a_half / c.h_right - 0.5 * c.b[2];
        row.p_c = -row.p_l - row.p_r - 0.5 * (c.b[1] + c.b[2]);
        row.rhs = 0.5 * (c.f[1] + c.f[2]);
    } else {
        const double a_half = 0.5 * (c.a[0] + c.a[1]);
        row.kind = StencilKind::MidpointBackward;
        row.p_l = eps / (c.h_left * c.hhat) - a_half / c.h_left - 0.5 * c.b[0];
        row.p_r = eps / (c.h_right * c.hhat);
        row.p_c = -row.p_l - row.p_r - 0.5 * (c.b[0] + c.b[1]);
        row.rhs = 0.5 * (c.f[0] + c.f[1]);
    }
    return row;
}

StencilRow upwind(const Local& c, double eps) {
    StencilRow row;
    row.p_l = eps / (c.h_left * c.hhat);
    row.p_r = eps / (c.h_right * c.hhat);
    if (c.a[1] > 0.0) {
        row.kind = StencilKind::UpwindForward;
        row.p_r += c.a[1] / c.h_right;
    } else {
        row.kind = StencilKind::UpwindBackward;
        row.p_l -= c.a[1] / c.h_left;
    }
    row.p_c = -row.p_l - row.p_r - c.b[1];
    row.rhs = c.f[1];
    return row;
}

StencilRow hybrid(int i, int n, const Local& c, double eps) {
    switch (classify(i, n, c.a[1])) {
        case StencilKind::MidpointForward: return midpoint(c, eps, MidpointDirection::Forward);
        case StencilKind::MidpointBackward: {
            auto row = midpoint(c, eps, MidpointDirection::Backward);
            // At a_i == 0 the backward row loses p_l > 0 once eps/h^2 is small;
            // the central row there is eps delta^2 - b and keeps the sign pattern.
            if (c.a[1] == 0.0 && !(row.p_l > 0.0 && row.p_r > 0.0)) return central(c, eps);
            return row;
        }
        default: return central(c, eps);
    }
}

template <class RowFn>
TridiagonalSystem assemble_with(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                                RowFn&& make_row) {
    if (!mesh) throw InvalidArgument("mesh is null");
    const int n = mesh->n();
    std::vector<StencilRow> rows;
    rows.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i) rows.push_back(make_row(i, gather(i, *mesh, problem)));
    return TridiagonalSystem(std::move(mesh), problem.bc_left, problem.bc_right, rows);
}

}  // namespace

const char* to_string(StencilKind kind) noexcept {
    switch (kind) {
        case StencilKind::Central: return "central";
        case StencilKind::MidpointForward: return "midpoint-forward";
        case StencilKind::MidpointBackward: return "midpoint-backward";
        case StencilKind::UpwindForward: return "upwind-forward";
        case StencilKind::UpwindBackward: return "upwind-backward";
    }
    return "?";
}

const char* to_string(SchemeKind kind) noexcept {
    return kind == SchemeKind::Hybrid ? "hybrid" : "upwind";
}

double StencilRow::scale() const noexcept { return std::abs(p_l) + std::abs(p_c) + std::abs(p_r); }

TridiagonalSystem::TridiagonalSystem(std::shared_ptr<const ShishkinMesh> mesh, double bc_left, double bc_right,
                                     std::span<const StencilRow> interior)
    : mesh_(std::move(mesh)) {
    if (!mesh_) throw InvalidArgument("mesh is null");
    const int n = mesh_->n();
    if (interior.size() != static_cast<std::size_t>(n - 1))
        throw InvalidArgument("expected " + std::to_string(n - 1) + " interior rows, got " +
                              std::to_string(interior.size()));
    const auto size = static_cast<std::size_t>(n) + 1;
    sub_.assign(size, 0.0);
    diag_.assign(size, 0.0);
    super_.assign(size, 0.0);
    rhs_.assign(size, 0.0);
    kinds_.reserve(interior.size());
    diag_.front() = 1.0;
    rhs_.front() = bc_left;
    diag_.back() = 1.0;
    rhs_.back() = bc_right;
    for (std::size_t k = 0; k < interior.size(); ++k) {
        sub_[k + 1] = interior[k].p_l;
        diag_[k + 1] = interior[k].p_c;
        super_[k + 1] = interior[k].p_r;
        rhs_[k + 1] = interior[k].rhs;
        kinds_.push_back(interior[k].kind);
    }
}

StencilRow TridiagonalSystem::row(int i) const {
    check_interior(i, n());
    const auto k = static_cast<std::size_t>(i);
    return StencilRow{sub_[k], diag_[k], super_[k], rhs_[k], kinds_[k - 1]};
}

std::vector<double> TridiagonalSystem::apply(std::span<const double> values) const {
    if (values.size() != diag_.size())
        throw InvalidArgument("mesh function has " + std::to_string(values.size()) + " entries, expected " +
                              std::to_string(diag_.size()));
    std::vector<double> out(values.size());
    out.front() = values.front();
    out.back() = values.back();
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        out[i] = sub_[i] * values[i - 1] + diag_[i] * values[i] + super_[i] * values[i + 1];
    return out;
}

TridiagonalSystem TridiagonalSystem::with_rhs(std::span<const double> rhs) const {
    if (rhs.size() != rhs_.size()) throw InvalidArgument("right-hand side length mismatch");
    TridiagonalSystem copy = *this;
    std::copy(rhs.begin(), rhs.end(), copy.rhs_.begin());
    return copy;
}

StencilKind classify(int i, int n, double a_i) {
    check_interior(i, n);
    if (i < n / 4 || i > 3 * n / 4) return StencilKind::Central;
    if (a_i > 0.0) return StencilKind::MidpointForward;
    return StencilKind::MidpointBackward;
}

StencilRow central_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon) {
    return central(gather(i, mesh, problem), epsilon.value());
}

StencilRow midpoint_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon,
                        MidpointDirection direction) {
    return midpoint(gather(i, mesh, problem), epsilon.value(), direction);
}

StencilRow upwind_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon) {
    return upwind(gather(i, mesh, problem), epsilon.value());
}

TridiagonalSystem assemble(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                           Epsilon epsilon) {
    const double eps = epsilon.value();
    const int n = mesh ? mesh->n() : 0;
    return assemble_with(problem, std::move(mesh),
                         [&](int i, const Local& c) { return hybrid(i, n, c, eps); });
}

TridiagonalSystem assemble_upwind(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                                  Epsilon epsilon) {
    const double eps = epsilon.value();
    return assemble_with(problem, std::move(mesh), [&](int, const Local& c) { return upwind(c, eps); });
}

TridiagonalSystem assemble(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                           Epsilon epsilon, SchemeKind scheme) {
    return scheme == SchemeKind::Hybrid ? assemble(problem, std::move(mesh), epsilon)
                                        : assemble_upwind(problem, std::move(mesh), epsilon);
}

AssumptionReport check_assumptions(const ProblemSpec& problem, const ShishkinMesh& mesh, Epsilon epsilon,
                                   std::optional<double> tau0) {
    constexpr int kUniformSamples = 1025;
    const double eps = epsilon.value();
    const int n = mesh.n();

    AssumptionReport report;
    auto sample = [&](double x) {
        report.sup_a = std::max(report.sup_a, std::abs(problem.a(x)));
        report.sup_b = std::max(report.sup_b, std::abs(problem.b(x)));
    };
    for (double x : mesh.nodes()) sample(x);
    for (int k = 0; k < kUniformSamples; ++k)
        sample(problem.domain_left + problem.length() * k / (kUniformSamples - 1));

    const double log_n = std::log(static_cast<double>(n));
    report.tau0 = tau0.value_or(mesh.tau() / (eps * log_n));
    report.mesh_ratio = mesh.fine_width() * report.sup_a / (2.0 * eps);
    report.tau_form_lhs = 2.0 * report.tau0 * report.sup_a;
    report.tau_form_rhs = n / log_n;
    report.convection_ok = report.mesh_ratio < 1.0;
    report.reaction_lhs = 2.0 * report.sup_b / n;
    report.alpha = problem.alpha;
    report.reaction_ok = report.reaction_lhs <= problem.alpha;
    return report;
}

}  // namespace sptp
