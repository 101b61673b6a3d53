#include "sptp/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "sptp/error.hpp"
#include "sptp/solver.hpp"

namespace sptp {

const char* to_string(Check check) noexcept {
    switch (check) {
        case Check::Assumptions: return "assumptions";
        case Check::MMatrix: return "m-matrix";
        case Check::MinimumPrinciple: return "minimum-principle";
        case Check::DiscreteStability: return "discrete-stability";
        case Check::ContinuousStability: return "continuous-stability";
        case Check::Barrier: return "barrier";
        case Check::SolverOracle: return "solver-oracle";
    }
    return "?";
}

bool VerifyReport::passed(bool strict) const noexcept {
    return std::all_of(checks.begin(), checks.end(), [&](const CheckResult& r) {
        return r.passed || (!strict && r.check == Check::Assumptions);
    });
}

std::vector<double> left_barrier(const ShishkinMesh& mesh, double gamma, double epsilon) {
    std::vector<double> phi(static_cast<std::size_t>(mesh.n()) + 1, 1.0);
    for (int j = 1; j <= mesh.n(); ++j) phi[j] = phi[j - 1] / (1.0 + gamma * mesh.h(j) / epsilon);
    return phi;
}

std::vector<double> right_barrier(const ShishkinMesh& mesh, double gamma, double epsilon) {
    std::vector<double> phi(static_cast<std::size_t>(mesh.n()) + 1, 1.0);
    for (int j = mesh.n(); j >= 1; --j) phi[j - 1] = phi[j] / (1.0 + gamma * mesh.h(j) / epsilon);
    return phi;
}

namespace {

constexpr Check kOrder[] = {Check::Assumptions,         Check::MMatrix, Check::MinimumPrinciple,
                            Check::DiscreteStability,   Check::ContinuousStability,
                            Check::Barrier,             Check::SolverOracle};

// Keeps the smallest margin seen and where it happened.
class Tracker {
public:
    explicit Tracker(Check check) { result_.check = check; result_.margin = std::numeric_limits<double>::infinity(); }

    void record(double margin, double epsilon, int n, const std::string& where) {
        ++result_.cases;
        if (margin < result_.margin) {
            result_.margin = margin;
            std::ostringstream msg;
            msg << "eps=" << epsilon << " n=" << n;
            if (!where.empty()) msg << " " << where;
            result_.worst = msg.str();
        }
        if (margin < 0.0) result_.passed = false;
    }
    void skip() { ++result_.skipped; }
    CheckResult finish() {
        if (result_.cases == 0) result_.margin = 0.0;
        return result_;
    }

private:
    CheckResult result_;
};

std::string at_row(int i) { return "row " + std::to_string(i); }

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sampled_sup(const ProblemSpec& problem, const CoefficientFn& fn) {
    constexpr int kSamples = 1025;
    double m = 0.0;
    for (int k = 0; k < kSamples; ++k) m = std::max(m, std::abs(fn(problem.domain_left + problem.length() * k / (kSamples - 1))));
    return m;
}

struct CellContext {
    const ProblemSpec& problem;
    const VerifyConfig& config;
    double epsilon;
    int n;
    const TridiagonalSystem& system;
    std::mt19937_64& rng;
};

void check_m_matrix(const CellContext& c, Tracker& t) {
    double worst = std::numeric_limits<double>::infinity();
    int worst_row = 0;
    for (int i = 1; i < c.n; ++i) {
        const auto row = c.system.row(i);
        const double slack = std::min({row.p_l, row.p_r, -(row.p_l + row.p_c + row.p_r)}) / row.scale();
        if (slack < worst) {
            worst = slack;
            worst_row = i;
        }
    }
    // Strict inequalities: a zero slack is a failure.
    t.record(worst > 0.0 ? worst : std::min(worst, -std::numeric_limits<double>::min()), c.epsilon, c.n,
             at_row(worst_row));
}

void check_minimum_principle(const CellContext& c, Tracker& t) {
    std::uniform_real_distribution<double> negative(-1.0, 0.0);
    std::uniform_real_distribution<double> positive(0.0, 1.0);
    std::vector<double> rhs(static_cast<std::size_t>(c.n) + 1);
    for (int s = 0; s < c.config.random_samples; ++s) {
        rhs.front() = s % 4 == 0 ? 0.0 : positive(c.rng);
        rhs.back() = s % 4 == 1 ? 0.0 : positive(c.rng);
        for (int i = 1; i < c.n; ++i) rhs[i] = (s % 3 == 0 && i % 2 == 0) ? 0.0 : negative(c.rng);
        const auto u = solve_values(c.system.with_rhs(rhs));
        const double scale = std::max(sup_norm(u), std::numeric_limits<double>::min());
        const double lowest = *std::min_element(u.begin(), u.end());
        t.record(lowest / scale + kMinimumPrincipleTolerance, c.epsilon, c.n, "sample " + std::to_string(s));
    }
}

void check_discrete_stability(const CellContext& c, Tracker& t) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> rhs(static_cast<std::size_t>(c.n) + 1, 0.0);
    for (int s = 0; s < c.config.random_samples; ++s) {
        for (int i = 1; i < c.n; ++i) rhs[i] = dist(c.rng);
        const auto u = solve_values(c.system.with_rhs(rhs));
        const double bound = sup_norm(rhs) / c.problem.beta;
        t.record((bound - sup_norm(u)) / bound + kStabilityTolerance, c.epsilon, c.n, "sample " + std::to_string(s));
    }
}

void check_continuous_stability(const CellContext& c, Tracker& t, double sup_f) {
    const auto u = solve_values(c.system);
    const double bound = sup_f / c.problem.beta + std::max(std::abs(c.problem.bc_left), std::abs(c.problem.bc_right));
    t.record(bound + kContinuousStabilityTolerance - sup_norm(u), c.epsilon, c.n, "");
}

void check_barrier(const CellContext& c, Tracker& t, double gamma) {
    const auto& mesh = c.system.mesh();
    const auto left = c.system.apply(left_barrier(mesh, gamma, c.epsilon));
    const auto right = c.system.apply(right_barrier(mesh, gamma, c.epsilon));
    double worst = std::numeric_limits<double>::infinity();
    std::string where;
    auto visit = [&](const std::vector<double>& applied, int first, int last, const char* side) {
        for (int i = first; i <= last; ++i) {
            const double slack = kBarrierTolerance - applied[i] / c.system.row(i).scale();
            if (slack < worst) {
                worst = slack;
                std::ostringstream msg;
                msg << side << " row " << i << " x=" << mesh.x(i);
                where = msg.str();
            }
        }
    };
    visit(left, 1, c.n / 2, "left");
    visit(right, c.n / 2, c.n - 1, "right");
    t.record(worst, c.epsilon, c.n, where);
}

void check_solver_oracle(const CellContext& c, Tracker& t) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto compare = [&](const TridiagonalSystem& system, const char* label) {
        const auto fast = thomas_solve(system.sub(), system.diag(), system.super(), system.rhs());
        const auto dense = dense_solve(system.sub(), system.diag(), system.super(), system.rhs());
        double diff = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) diff = std::max(diff, std::abs(fast[i] - dense[i]));
        const double scale = std::max(sup_norm(dense), std::numeric_limits<double>::min());
        t.record(kOracleTolerance - diff / scale, c.epsilon, c.n, label);
    };
    compare(c.system, "problem rhs");
    std::vector<double> rhs(static_cast<std::size_t>(c.n) + 1);
    for (auto& v : rhs) v = dist(c.rng);
    compare(c.system.with_rhs(rhs), "random rhs");
}

}  // namespace

VerifyReport run_verification(const ProblemSpec& problem, const VerifyConfig& config) {
    if (config.epsilons.empty() || config.ns.empty()) throw InvalidArgument("verification grid is empty");
    if (config.random_samples < 1) throw InvalidArgument("random_samples must be positive");
    if (!(problem.beta > 0.0)) throw InvalidArgument("verification needs beta > 0");
    const double gamma = config.gamma.value_or(problem.alpha / 4.0);
    if (!(gamma > 0.0)) throw InvalidArgument("barrier gamma must be positive");
    const double sup_f = sampled_sup(problem, problem.f);

    std::vector<Tracker> trackers;
    for (Check check : kOrder) trackers.emplace_back(check);
    auto enabled = [&](Check check) { return (config.checks & static_cast<unsigned>(check)) != 0; };
    auto tracker = [&](Check check) -> Tracker& {
        return trackers[static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(check)))];
    };

    std::mt19937_64 rng(config.seed);
    for (double epsilon : config.epsilons) {
        const Epsilon eps(epsilon);
        for (int n : config.ns) {
            MeshConfig mesh_config{n, config.tau0, eps, problem.domain_left, problem.domain_right, std::nullopt};
            auto mesh = std::make_shared<const ShishkinMesh>(build_mesh(mesh_config));
            const auto system = assemble(problem, mesh, eps, config.scheme);
            const auto assumptions = check_assumptions(problem, *mesh, eps, config.tau0);

            if (enabled(Check::Assumptions)) {
                const double slack = std::min(1.0 - assumptions.mesh_ratio,
                                              (assumptions.alpha - assumptions.reaction_lhs) /
                                                  std::max(assumptions.alpha, 1.0));
                std::string what = assumptions.convection_ok ? "" : "condition 1 (h||a||/(2 eps) < 1)";
                if (!assumptions.reaction_ok) what += what.empty() ? "condition 2 (2||b||/n <= alpha)" : ", condition 2";
                // mesh_ratio == 1 is a failure even though the slack is zero.
                tracker(Check::Assumptions)
                    .record(assumptions.passed() ? std::max(slack, 0.0) : std::min(slack, -std::numeric_limits<double>::min()),
                            epsilon, n, what);
            }

            const CellContext cell{problem, config, epsilon, n, system, rng};
            for (Check check : kOrder) {
                if (check == Check::Assumptions || !enabled(check)) continue;
                if (check == Check::SolverOracle && n > config.oracle_max_n) continue;
                if (!assumptions.passed()) {
                    tracker(check).skip();
                    continue;
                }
                switch (check) {
                    case Check::MMatrix: check_m_matrix(cell, tracker(check)); break;
                    case Check::MinimumPrinciple: check_minimum_principle(cell, tracker(check)); break;
                    case Check::DiscreteStability: check_discrete_stability(cell, tracker(check)); break;
                    case Check::ContinuousStability: check_continuous_stability(cell, tracker(check), sup_f); break;
                    case Check::Barrier: check_barrier(cell, tracker(check), gamma); break;
                    case Check::SolverOracle: check_solver_oracle(cell, tracker(check)); break;
                    default: break;
                }
            }
        }
    }

    VerifyReport report;
    for (Check check : kOrder)
        if (enabled(check)) report.checks.push_back(tracker(check).finish());
    return report;
}

}  // namespace sptp
