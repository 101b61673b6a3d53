#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sptp/mesh.hpp"
#include "sptp/problem.hpp"

namespace sptp {

enum class StencilKind {
    Central,
    MidpointForward,
    MidpointBackward,
    UpwindForward,
    UpwindBackward,
};

enum class SchemeKind { Hybrid, Upwind };

enum class MidpointDirection { Forward, Backward };

const char* to_string(StencilKind kind) noexcept;
const char* to_string(SchemeKind kind) noexcept;

/// p_l U_{i-1} + p_c U_i + p_r U_{i+1} = rhs
struct StencilRow {
    double p_l = 0.0;
    double p_c = 0.0;
    double p_r = 0.0;
    double rhs = 0.0;
    StencilKind kind = StencilKind::Central;

    double scale() const noexcept;  // |p_l| + |p_c| + |p_r|
};

/// Three-diagonal operator on nodes 0..n. Rows 0 and n are identity rows
/// carrying the boundary values; rows 1..n-1 are the assembled stencils.
class TridiagonalSystem {
public:
    TridiagonalSystem(std::shared_ptr<const ShishkinMesh> mesh, double bc_left, double bc_right,
                      std::span<const StencilRow> interior);

    int n() const noexcept { return static_cast<int>(diag_.size()) - 1; }
    std::span<const double> sub() const noexcept { return sub_; }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> super() const noexcept { return super_; }
    std::span<const double> rhs() const noexcept { return rhs_; }
    double bc_left() const noexcept { return rhs_.front(); }
    double bc_right() const noexcept { return rhs_.back(); }
    const ShishkinMesh& mesh() const noexcept { return *mesh_; }
    const std::shared_ptr<const ShishkinMesh>& mesh_ptr() const noexcept { return mesh_; }

    // Interior row i, 1 <= i <= n-1.
    StencilRow row(int i) const;

    /// (L^N v)_i for i = 1..n-1; entries 0 and n hold v_0 and v_n.
    std::vector<double> apply(std::span<const double> values) const;

    /// Same operator with a different right-hand side (boundary entries included).
    TridiagonalSystem with_rhs(std::span<const double> rhs) const;

private:
    std::shared_ptr<const ShishkinMesh> mesh_;
    std::vector<double> sub_;
    std::vector<double> diag_;
    std::vector<double> super_;
    std::vector<double> rhs_;
    std::vector<StencilKind> kinds_;
};

/// Central on the fine interiors 1..n/4-1 and 3n/4+1..n-1; midpoint upwind on
/// n/4..3n/4 by the sign of a_i, backward when a_i == 0. During assembly a
/// backward row at a_i == 0 that has lost p_l > 0 or p_r > 0 is replaced by
/// the central row, which there reduces to eps delta^2 - b.
StencilKind classify(int i, int n, double a_i);

StencilRow central_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon);
StencilRow midpoint_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon,
                        MidpointDirection direction);
/// First-order upwind: eps delta^2 U + a_i D^+ U - b_i U = f_i for a_i > 0, D^- otherwise.
StencilRow upwind_row(int i, const ShishkinMesh& mesh, const ProblemSpec& problem, Epsilon epsilon);

TridiagonalSystem assemble(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                           Epsilon epsilon);
TridiagonalSystem assemble_upwind(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                                  Epsilon epsilon);
TridiagonalSystem assemble(const ProblemSpec& problem, std::shared_ptr<const ShishkinMesh> mesh,
                           Epsilon epsilon, SchemeKind scheme);

/// Sufficient conditions for the discrete minimum principle:
///   (1) h ||a|| / (2 eps) < 1, equivalently 2 tau0 ||a|| < n / ln n when the
///       tau cap is inactive;
///   (2) 2 ||b|| / n <= alpha.
/// Norms are sup-norms sampled on the nodes plus a uniform grid.
struct AssumptionReport {
    double sup_a = 0.0;
    double sup_b = 0.0;
    double mesh_ratio = 0.0;     // h ||a|| / (2 eps)
    double tau0 = 0.0;
    double tau_form_lhs = 0.0;   // 2 tau0 ||a||
    double tau_form_rhs = 0.0;   // n / ln n
    bool convection_ok = false;  // mesh_ratio < 1
    double reaction_lhs = 0.0;   // 2 ||b|| / n
    double alpha = 0.0;
    bool reaction_ok = false;    // reaction_lhs <= alpha

    bool passed() const noexcept { return convection_ok && reaction_ok; }
};

/// tau0 defaults to the effective value tau / (eps ln n).
AssumptionReport check_assumptions(const ProblemSpec& problem, const ShishkinMesh& mesh, Epsilon epsilon,
                                   std::optional<double> tau0 = std::nullopt);

}  // namespace sptp
