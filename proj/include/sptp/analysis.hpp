#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sptp/problem.hpp"
#include "sptp/scheme.hpp"
#include "sptp/solver.hpp"

namespace sptp {

enum class ErrorMode { Auto, Exact, DoubleMesh };

const char* to_string(ErrorMode mode) noexcept;

struct ErrorGridEntry {
    double epsilon = 0.0;
    int n = 0;
    double error = 0.0;
    std::optional<double> order;  // set when the 2n entry exists
    double tau0 = 0.0;
    SchemeKind scheme = SchemeKind::Hybrid;
    AssumptionReport assumptions;
    std::optional<double> residual;  // filled when residual checking is on
};

struct ConvergenceReport {
    std::string problem_id;
    SchemeKind scheme = SchemeKind::Hybrid;
    ErrorMode mode = ErrorMode::Exact;  // resolved, never Auto
    double tau0 = 0.0;
    std::vector<double> epsilons;
    std::vector<int> ns;
    std::vector<ErrorGridEntry> entries;  // epsilon-major, n-minor
    std::map<int, double> uniform_rows;   // n -> max over epsilon of E

    const ErrorGridEntry& at(std::size_t eps_index, std::size_t n_index) const;
};

/// max over nodes of |u(x_i) - U_i|.
double max_pointwise_error(const DiscreteSolution& solution, const ExactFn& exact);

/// max over coarse nodes of |U^n_i - U^{2n}_{2i}|. The fine mesh must reuse the
/// coarse tau; NonNestedMesh is thrown when nodes differ by more than 1e-12.
double double_mesh_error(const DiscreteSolution& coarse, const DiscreteSolution& fine);

/// log2(e_n / e_2n).
double observed_order(double e_n, double e_2n);

struct SolveRequest {
    SchemeKind scheme = SchemeKind::Hybrid;
    double epsilon = 1.0;
    int n = 16;
    double tau0 = kDefaultTau0;
};

DiscreteSolution solve_problem(const ProblemSpec& problem, const SolveRequest& request);

struct ConvergenceOptions {
    SchemeKind scheme = SchemeKind::Hybrid;
    double tau0 = kDefaultTau0;
    ErrorMode mode = ErrorMode::Auto;
    bool residual_check = false;
};

/// Solves every (epsilon, n) cell and fills errors, orders between doubling
/// neighbours and the epsilon-uniform maxima. ns must be ascending and each
/// divisible by 4. All-or-nothing: any failure propagates.
ConvergenceReport run_convergence(const ProblemSpec& problem, std::span<const double> epsilons,
                                  std::span<const int> ns, const ConvergenceOptions& options);

inline constexpr std::array<double, 10> kPowerOfTenEpsilons = {1e0,  1e-1, 1e-2, 1e-3, 1e-4,
                                                                1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
inline constexpr std::array<double, 2> kPowerOfTwoEpsilons = {0x1p-12, 0x1p-16};
inline constexpr std::array<int, 7> kDefaultNs = {16, 32, 64, 128, 256, 512, 1024};

}  // namespace sptp
