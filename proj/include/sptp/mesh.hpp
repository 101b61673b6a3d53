#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sptp/problem.hpp"

namespace sptp {

struct MeshConfig {
    int n = 0;             // intervals, n >= 8 and n % 4 == 0
    double tau0 = 0.0;     // transition-parameter multiplier
    Epsilon epsilon{1.0};
    double domain_left = 0.0;
    double domain_right = 1.0;
    // Upper bound on tau. Defaults to min(1/4, (right - left)/4).
    std::optional<double> tau_cap;
};

/// Default tau0 for the built-in examples.
inline constexpr double kDefaultTau0 = 0.8;

double default_tau_cap(double domain_left, double domain_right) noexcept;

/// tau = min(cap, tau0 * eps * ln n).
double transition_parameter(const MeshConfig& config);

/// Piecewise-uniform Shishkin mesh: n/4 fine intervals on [left, left + tau],
/// n/2 coarse intervals on [left + tau, right - tau], n/4 fine intervals on
/// [right - tau, right].
class ShishkinMesh {
public:
    ShishkinMesh(int n, double tau, double domain_left, double domain_right);

    int n() const noexcept { return n_; }
    double tau() const noexcept { return tau_; }
    double fine_width() const noexcept { return fine_; }
    double coarse_width() const noexcept { return coarse_; }
    double domain_left() const noexcept { return nodes_.front(); }
    double domain_right() const noexcept { return nodes_.back(); }

    std::span<const double> nodes() const noexcept { return nodes_; }
    // widths()[i - 1] is h_i, i = 1..n
    std::span<const double> widths() const noexcept { return widths_; }

    double x(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    double h(int i) const { return widths_.at(static_cast<std::size_t>(i - 1)); }
    // (h_i + h_{i+1}) / 2, interior i only
    double hhat(int i) const { return 0.5 * (h(i) + h(i + 1)); }

    // Interval i (between x_{i-1} and x_i) lies in a layer piece.
    bool is_fine_interval(int i) const noexcept { return i <= n_ / 4 || i > 3 * n_ / 4; }

private:
    int n_;
    double tau_;
    double fine_;
    double coarse_;
    std::vector<double> nodes_;
    std::vector<double> widths_;
};

ShishkinMesh build_mesh(const MeshConfig& config);

/// Mesh with 2n intervals on the same tau, whose even nodes coincide with
/// the nodes of `coarse`. Used by the double-mesh error estimate.
ShishkinMesh refine_nested(const ShishkinMesh& coarse);

}  // namespace sptp
