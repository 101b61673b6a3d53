#include "sptp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "sptp/error.hpp"

namespace sptp {

namespace {

std::string singular_message(std::size_t row, double pivot) {
    std::ostringstream msg;
    msg << "singular system: pivot " << pivot << " at row " << row;
    return msg.str();
}

void check_lengths(std::span<const double> sub, std::span<const double> diag, std::span<const double> super,
                   std::span<const double> rhs) {
    const auto n = diag.size();
    if (n == 0) throw InvalidArgument("empty system");
    if (sub.size() != n || super.size() != n || rhs.size() != n)
        throw InvalidArgument("tridiagonal arrays must have equal length");
}

}  // namespace

SingularSystem::SingularSystem(std::size_t row, double pivot)
    : std::runtime_error(singular_message(row, pivot)), row_(row) {}

std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                 std::span<const double> super, std::span<const double> rhs) {
    check_lengths(sub, diag, super, rhs);
    const auto n = diag.size();
    std::vector<double> upper(n, 0.0);  // modified super-diagonal
    std::vector<double> x(n, 0.0);      // modified rhs, then solution

    double pivot = diag[0];
    if (!(std::abs(pivot) >= kPivotFloor)) throw SingularSystem(0, pivot);
    upper[0] = super[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i] * upper[i - 1];
        if (!(std::abs(pivot) >= kPivotFloor)) throw SingularSystem(i, pivot);
        upper[i] = i + 1 < n ? super[i] / pivot : 0.0;
        x[i] = (rhs[i] - sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper[i] * x[i + 1];
    return x;
}

std::vector<double> dense_solve(std::span<const double> sub, std::span<const double> diag,
                                std::span<const double> super, std::span<const double> rhs) {
    check_lengths(sub, diag, super, rhs);
    const auto n = diag.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) m[i][i - 1] = sub[i];
        m[i][i] = diag[i];
        if (i + 1 < n) m[i][i + 1] = super[i];
        m[i][n] = rhs[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
        if (!(std::abs(m[best][col]) >= kPivotFloor)) throw SingularSystem(col, m[best][col]);
        std::swap(m[col], m[best]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = m[r][col] / m[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = m[i][n];
        for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * x[c];
        x[i] = acc / m[i][i];
    }
    return x;
}

std::vector<double> solve_values(const TridiagonalSystem& system) {
    auto values = thomas_solve(system.sub(), system.diag(), system.super(), system.rhs());
    // Identity boundary rows already give these; assign so they hold bit-exactly.
    values.front() = system.bc_left();
    values.back() = system.bc_right();
    return values;
}

DiscreteSolution solve(const TridiagonalSystem& system, double epsilon, SchemeKind scheme) {
    return DiscreteSolution{solve_values(system), system.mesh_ptr(), epsilon, scheme};
}

double residual(const TridiagonalSystem& system, std::span<const double> values) {
    const auto applied = system.apply(values);
    const auto rhs = system.rhs();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < applied.size(); ++i) worst = std::max(worst, std::abs(applied[i] - rhs[i]));
    return worst;
}

double residual_scale(const TridiagonalSystem& system, std::span<const double> values) {
    double row_scale = 0.0;
    for (int i = 1; i < system.n(); ++i) row_scale = std::max(row_scale, system.row(i).scale());
    double norm = 0.0;
    for (double v : values) norm = std::max(norm, std::abs(v));
    return row_scale * norm;
}

}  // namespace sptp
