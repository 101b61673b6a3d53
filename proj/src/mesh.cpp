#include "sptp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sptp/error.hpp"

namespace sptp {

namespace {

void check_intervals(int n) {
    if (n < 8) throw InvalidArgument("n must be at least 8, got " + std::to_string(n));
    if (n % 4 != 0) throw InvalidArgument("n must be divisible by 4, got " + std::to_string(n));
}

// Affine fill of nodes[first..last] between the already-assigned endpoints.
void fill_piece(std::vector<double>& nodes, int first, int last) {
    const double lo = nodes[first];
    const double hi = nodes[last];
    const double count = last - first;
    for (int k = 1; k < last - first; ++k)
        nodes[first + k] = lo + (hi - lo) * (k / count);
}

}  // namespace

double default_tau_cap(double domain_left, double domain_right) noexcept {
    return std::min(0.25, 0.25 * (domain_right - domain_left));
}

double transition_parameter(const MeshConfig& config) {
    check_intervals(config.n);
    if (!(config.tau0 > 0.0)) throw InvalidArgument("tau0 must be positive");
    const double length = config.domain_right - config.domain_left;
    if (!(length > 0.0)) throw InvalidArgument("domain_left must be below domain_right");
    const double cap = config.tau_cap.value_or(default_tau_cap(config.domain_left, config.domain_right));
    if (!(cap > 0.0) || cap > 0.25 * length)
        throw InvalidArgument("tau cap must lie in (0, (right - left)/4]");
    return std::min(cap, config.tau0 * config.epsilon.value() * std::log(static_cast<double>(config.n)));
}

ShishkinMesh::ShishkinMesh(int n, double tau, double domain_left, double domain_right)
    : n_(n), tau_(tau) {
    check_intervals(n);
    const double length = domain_right - domain_left;
    if (!(length > 0.0)) throw InvalidArgument("domain_left must be below domain_right");
    if (!(tau > 0.0) || tau > 0.25 * length)
        throw InvalidArgument("tau must lie in (0, (right - left)/4]");

    const int q = n / 4;
    fine_ = 4.0 * tau / n;
    coarse_ = 2.0 * (length - 2.0 * tau) / n;

    // Breakpoints and the midpoint are assigned, pieces are filled affinely.
    // The right half mirrors the left so the mesh is symmetric.
    nodes_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    nodes_[0] = domain_left;
    nodes_[q] = domain_left + tau;
    nodes_[2 * q] = 0.5 * (domain_left + domain_right);
    nodes_[3 * q] = domain_right - tau;
    nodes_[n] = domain_right;
    fill_piece(nodes_, 0, q);
    fill_piece(nodes_, q, 2 * q);
    for (int i = 2 * q + 1; i < 3 * q; ++i) {
        const int mirror = n - i;
        nodes_[i] = domain_right - (nodes_[mirror] - domain_left);
    }
    for (int i = 3 * q + 1; i < n; ++i) {
        const int mirror = n - i;
        nodes_[i] = domain_right - (nodes_[mirror] - domain_left);
    }

    widths_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        widths_[i - 1] = is_fine_interval(i) ? fine_ : coarse_;
}

ShishkinMesh build_mesh(const MeshConfig& config) {
    const double tau = transition_parameter(config);
    return ShishkinMesh(config.n, tau, config.domain_left, config.domain_right);
}

ShishkinMesh refine_nested(const ShishkinMesh& coarse) {
    return ShishkinMesh(2 * coarse.n(), coarse.tau(), coarse.domain_left(), coarse.domain_right());
}

}  // namespace sptp
