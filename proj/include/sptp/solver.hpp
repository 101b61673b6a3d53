#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sptp/mesh.hpp"
#include "sptp/scheme.hpp"

namespace sptp {

/// Nodal values U_0..U_n of a discrete solve, tagged with how they were made.
struct DiscreteSolution {
    std::vector<double> values;
    std::shared_ptr<const ShishkinMesh> mesh;
    double epsilon = 0.0;
    SchemeKind scheme = SchemeKind::Hybrid;
};

/// Pivots with magnitude below this are treated as singular.
inline constexpr double kPivotFloor = 1e-300;

/// Thomas algorithm, no pivoting. Row i reads
///   sub[i] x[i-1] + diag[i] x[i] + super[i] x[i+1] = rhs[i],
/// with sub[0] and super[n-1] ignored. Throws SingularSystem on a tiny pivot.
std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                 std::span<const double> super, std::span<const double> rhs);

/// Dense Gaussian elimination with partial pivoting on the same tridiagonal
/// layout. O(n^3); serves as the reference the Thomas path is checked against.
std::vector<double> dense_solve(std::span<const double> sub, std::span<const double> diag,
                                std::span<const double> super, std::span<const double> rhs);

DiscreteSolution solve(const TridiagonalSystem& system, double epsilon, SchemeKind scheme);
std::vector<double> solve_values(const TridiagonalSystem& system);

/// max over interior rows of |p_l U_{i-1} + p_c U_i + p_r U_{i+1} - rhs_i|.
double residual(const TridiagonalSystem& system, std::span<const double> values);

/// max_i (|p_l| + |p_c| + |p_r|) * max_i |U_i|; the residual tolerance scale.
double residual_scale(const TridiagonalSystem& system, std::span<const double> values);

inline constexpr double kResidualTolerance = 1e-11;

}  // namespace sptp
