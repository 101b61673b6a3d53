#include "sptp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "sptp/error.hpp"

namespace sptp {

const char* to_string(ErrorMode mode) noexcept {
    switch (mode) {
        case ErrorMode::Auto: return "auto";
        case ErrorMode::Exact: return "exact";
        case ErrorMode::DoubleMesh: return "double-mesh";
    }
    return "?";
}

const ErrorGridEntry& ConvergenceReport::at(std::size_t eps_index, std::size_t n_index) const {
    if (eps_index >= epsilons.size() || n_index >= ns.size()) throw InvalidArgument("report index out of range");
    return entries.at(eps_index * ns.size() + n_index);
}

double max_pointwise_error(const DiscreteSolution& solution, const ExactFn& exact) {
    if (!solution.mesh) throw InvalidArgument("solution has no mesh");
    const auto nodes = solution.mesh->nodes();
    if (nodes.size() != solution.values.size()) throw InvalidArgument("solution length does not match mesh");
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        worst = std::max(worst, std::abs(exact(nodes[i], solution.epsilon) - solution.values[i]));
    return worst;
}

double double_mesh_error(const DiscreteSolution& coarse, const DiscreteSolution& fine) {
    if (!coarse.mesh || !fine.mesh) throw InvalidArgument("solution has no mesh");
    const auto xc = coarse.mesh->nodes();
    const auto xf = fine.mesh->nodes();
    if (xf.size() != 2 * xc.size() - 1)
        throw NonNestedMesh("fine mesh must have twice the intervals of the coarse mesh");
    if (coarse.values.size() != xc.size() || fine.values.size() != xf.size())
        throw InvalidArgument("solution length does not match mesh");
    double worst = 0.0;
    for (std::size_t i = 0; i < xc.size(); ++i) {
        if (std::abs(xc[i] - xf[2 * i]) > 1e-12) {
            std::ostringstream msg;
            msg << "meshes are not nested: coarse node " << i << " at " << xc[i] << ", fine node at "
                << xf[2 * i];
            throw NonNestedMesh(msg.str());
        }
        worst = std::max(worst, std::abs(coarse.values[i] - fine.values[2 * i]));
    }
    return worst;
}

double observed_order(double e_n, double e_2n) {
    if (!(e_n > 0.0) || !(e_2n > 0.0)) throw InvalidArgument("observed order needs positive errors");
    return std::log2(e_n / e_2n);
}

DiscreteSolution solve_problem(const ProblemSpec& problem, const SolveRequest& request) {
    const Epsilon eps(request.epsilon);
    MeshConfig config{request.n, request.tau0, eps, problem.domain_left, problem.domain_right, std::nullopt};
    auto mesh = std::make_shared<const ShishkinMesh>(build_mesh(config));
    const auto system = assemble(problem, mesh, eps, request.scheme);
    return solve(system, eps.value(), request.scheme);
}

namespace {

void check_grid(std::span<const double> epsilons, std::span<const int> ns) {
    if (epsilons.empty()) throw InvalidArgument("need at least one epsilon");
    if (ns.empty()) throw InvalidArgument("need at least one n");
    for (double e : epsilons) Epsilon{e};
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] % 4 != 0) throw InvalidArgument("n must be divisible by 4, got " + std::to_string(ns[k]));
        if (k > 0 && ns[k] <= ns[k - 1]) throw InvalidArgument("n values must be strictly ascending");
    }
}

struct Cell {
    double error;
    AssumptionReport assumptions;
    std::optional<double> residual;
};

Cell solve_cell(const ProblemSpec& problem, double epsilon, int n, const ConvergenceOptions& options,
                ErrorMode mode) {
    const Epsilon eps(epsilon);
    MeshConfig config{n, options.tau0, eps, problem.domain_left, problem.domain_right, std::nullopt};
    auto mesh = std::make_shared<const ShishkinMesh>(build_mesh(config));
    const auto system = assemble(problem, mesh, eps, options.scheme);
    auto solution = solve(system, epsilon, options.scheme);

    Cell cell{};
    cell.assumptions = check_assumptions(problem, *mesh, eps, options.tau0);
    if (options.residual_check) {
        const double r = residual(system, solution.values);
        const double scale = residual_scale(system, solution.values);
        if (r > kResidualTolerance * scale) {
            std::ostringstream msg;
            msg << "residual check failed: " << r << " > " << kResidualTolerance << " * " << scale;
            throw NumericalFailure(msg.str());
        }
        cell.residual = r;
    }
    if (mode == ErrorMode::Exact) {
        cell.error = max_pointwise_error(solution, *problem.exact);
    } else {
        auto fine_mesh = std::make_shared<const ShishkinMesh>(refine_nested(*mesh));
        const auto fine_system = assemble(problem, fine_mesh, eps, options.scheme);
        cell.error = double_mesh_error(solution, solve(fine_system, epsilon, options.scheme));
    }
    return cell;
}

}  // namespace

ConvergenceReport run_convergence(const ProblemSpec& problem, std::span<const double> epsilons,
                                  std::span<const int> ns, const ConvergenceOptions& options) {
    check_grid(epsilons, ns);
    ErrorMode mode = options.mode;
    if (mode == ErrorMode::Auto) mode = problem.exact ? ErrorMode::Exact : ErrorMode::DoubleMesh;
    if (mode == ErrorMode::Exact && !problem.exact)
        throw MissingExactSolution("problem '" + problem.id + "' has no exact solution");

    ConvergenceReport report;
    report.problem_id = problem.id;
    report.scheme = options.scheme;
    report.mode = mode;
    report.tau0 = options.tau0;
    report.epsilons.assign(epsilons.begin(), epsilons.end());
    report.ns.assign(ns.begin(), ns.end());
    report.entries.reserve(epsilons.size() * ns.size());

    for (double epsilon : epsilons) {
        for (int n : ns) {
            Cell cell;
            try {
                cell = solve_cell(problem, epsilon, n, options, mode);
            } catch (const NumericalFailure& e) {
                std::ostringstream msg;
                msg << e.what() << " (epsilon = " << epsilon << ", n = " << n << ")";
                throw NumericalFailure(msg.str());
            } catch (const SingularSystem& e) {
                std::ostringstream msg;
                msg << e.what() << " (epsilon = " << epsilon << ", n = " << n << ")";
                throw NumericalFailure(msg.str());
            }
            ErrorGridEntry entry;
            entry.epsilon = epsilon;
            entry.n = n;
            entry.error = cell.error;
            entry.tau0 = options.tau0;
            entry.scheme = options.scheme;
            entry.assumptions = cell.assumptions;
            entry.residual = cell.residual;
            report.entries.push_back(entry);
        }
    }

    for (std::size_t e = 0; e < epsilons.size(); ++e) {
        for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
            if (ns[k + 1] != 2 * ns[k]) continue;
            auto& entry = report.entries[e * ns.size() + k];
            const auto& next = report.entries[e * ns.size() + k + 1];
            if (entry.error > 0.0 && next.error > 0.0) entry.order = observed_order(entry.error, next.error);
        }
    }
    for (const auto& entry : report.entries) {
        auto [it, inserted] = report.uniform_rows.try_emplace(entry.n, entry.error);
        if (!inserted) it->second = std::max(it->second, entry.error);
    }
    return report;
}

}  // namespace sptp
