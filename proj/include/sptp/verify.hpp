#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptp/problem.hpp"
#include "sptp/scheme.hpp"

namespace sptp {

/// Discrete properties checked over an (epsilon, n) grid. Every check except
/// Assumptions is evaluated only on cells where check_assumptions passes.
enum class Check : unsigned {
    Assumptions = 1u << 0,          // h||a||/(2 eps) < 1 and 2||b||/n <= alpha
    MMatrix = 1u << 1,              // p_l > 0, p_r > 0, p_l + p_c + p_r < 0
    MinimumPrinciple = 1u << 2,     // rhs <= 0, BC >= 0  =>  U >= 0
    DiscreteStability = 1u << 3,    // zero BC  =>  ||U|| <= max|rhs| / beta
    ContinuousStability = 1u << 4,  // ||U|| <= ||f||/beta + max(|A|, |B|)
    Barrier = 1u << 5,              // L Phi^L <= 0 on 1..n/2, L Phi^R <= 0 on n/2..n-1
    SolverOracle = 1u << 6,         // Thomas == dense elimination, n <= oracle_max_n
};

inline constexpr unsigned kAllChecks = 0x7fu;

const char* to_string(Check check) noexcept;

struct VerifyConfig {
    std::vector<double> epsilons{1e-4, 1e-6, 1e-8};
    std::vector<int> ns{16, 32, 64, 128, 256};
    double tau0 = kDefaultTau0;
    SchemeKind scheme = SchemeKind::Hybrid;
    int random_samples = 100;
    std::uint64_t seed = 20240601;
    std::optional<double> gamma;  // barrier decay rate, default alpha / 4
    int oracle_max_n = 64;
    unsigned checks = kAllChecks;
};

inline constexpr double kMinimumPrincipleTolerance = 1e-12;
inline constexpr double kStabilityTolerance = 1e-10;
inline constexpr double kContinuousStabilityTolerance = 1e-8;
inline constexpr double kBarrierTolerance = 1e-12;
inline constexpr double kOracleTolerance = 1e-11;

/// Outcome of one check. margin is the worst normalized slack over all cells:
/// >= 0 means the inequality held everywhere, < 0 is the worst violation.
struct CheckResult {
    Check check = Check::Assumptions;
    bool passed = true;
    double margin = 0.0;
    std::size_t cases = 0;    // cells (or rows / samples) evaluated
    std::size_t skipped = 0;  // cells skipped because assumptions failed
    std::string worst;        // where the margin was attained
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    /// The assumption check is advisory unless strict.
    bool passed(bool strict) const noexcept;
};

VerifyReport run_verification(const ProblemSpec& problem, const VerifyConfig& config);

/// Phi^L_i = prod_{j<=i} (1 + gamma h_j / eps)^{-1}.
std::vector<double> left_barrier(const ShishkinMesh& mesh, double gamma, double epsilon);
/// Phi^R_i = prod_{j>i} (1 + gamma h_j / eps)^{-1}.
std::vector<double> right_barrier(const ShishkinMesh& mesh, double gamma, double epsilon);

}  // namespace sptp
