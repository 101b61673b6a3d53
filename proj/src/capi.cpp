#include "sptp/sptp.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "sptp/analysis.hpp"
#include "sptp/error.hpp"
#include "sptp/special.hpp"
#include "sptp/verify.hpp"

struct sptp_problem {
    sptp::ProblemSpec spec;
};

struct sptp_report {
    sptp::ConvergenceReport report;
};

struct sptp_verify_report {
    sptp::VerifyReport report;
};

namespace {

thread_local std::string last_error;

sptp_status fail(sptp_status status, const char* message) {
    last_error = message;
    return status;
}

// Maps exceptions escaping the C++ core onto status codes.
template <class Fn>
sptp_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        return SPTP_OK;
    } catch (const sptp::InvalidArgument& e) {
        return fail(SPTP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const sptp::SingularSystem& e) {
        return fail(SPTP_ERR_NUMERICAL, e.what());
    } catch (const sptp::NumericalFailure& e) {
        return fail(SPTP_ERR_NUMERICAL, e.what());
    } catch (const sptp::NonNestedMesh& e) {
        return fail(SPTP_ERR_NOT_NESTED, e.what());
    } catch (const sptp::MissingExactSolution& e) {
        return fail(SPTP_ERR_NO_EXACT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SPTP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SPTP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SPTP_ERR_INTERNAL, "unknown error");
    }
}

#define SPTP_REQUIRE(cond, msg) \
    if (!(cond)) return fail(SPTP_ERR_INVALID_ARGUMENT, msg)

sptp::SchemeKind to_scheme(sptp_scheme scheme) {
    switch (scheme) {
        case SPTP_SCHEME_HYBRID: return sptp::SchemeKind::Hybrid;
        case SPTP_SCHEME_UPWIND: return sptp::SchemeKind::Upwind;
    }
    throw sptp::InvalidArgument("unknown scheme");
}

sptp::ErrorMode to_mode(sptp_error_mode mode) {
    switch (mode) {
        case SPTP_ERROR_AUTO: return sptp::ErrorMode::Auto;
        case SPTP_ERROR_EXACT: return sptp::ErrorMode::Exact;
        case SPTP_ERROR_DOUBLE_MESH: return sptp::ErrorMode::DoubleMesh;
    }
    throw sptp::InvalidArgument("unknown error mode");
}

sptp_status wrap_problem(sptp::ProblemSpec spec, sptp_problem** out) {
    *out = new sptp_problem{std::move(spec)};
    return SPTP_OK;
}

}  // namespace

extern "C" {

const char* sptp_version(void) { return "1.0.0"; }

const char* sptp_last_error(void) { return last_error.c_str(); }

const char* sptp_status_string(sptp_status status) {
    switch (status) {
        case SPTP_OK: return "ok";
        case SPTP_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SPTP_ERR_NUMERICAL: return "numerical failure";
        case SPTP_ERR_NOT_NESTED: return "meshes not nested";
        case SPTP_ERR_NO_EXACT: return "no exact solution";
        case SPTP_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

double sptp_erf(double z) { return sptp::erf(z); }

double sptp_default_tau0(void) { return sptp::kDefaultTau0; }

sptp_status sptp_problem_example1(sptp_problem** out) {
    SPTP_REQUIRE(out, "out is null");
    return guarded([&] { wrap_problem(sptp::example1(), out); });
}

sptp_status sptp_problem_example2(sptp_problem** out) {
    SPTP_REQUIRE(out, "out is null");
    return guarded([&] { wrap_problem(sptp::example2(), out); });
}

sptp_status sptp_problem_polynomial(const sptp_polynomial_problem* spec, sptp_problem** out) {
    SPTP_REQUIRE(spec && out, "null argument");
    SPTP_REQUIRE((spec->a || spec->a_len == 0) && (spec->b || spec->b_len == 0) && (spec->f || spec->f_len == 0),
                 "null coefficient array");
    return guarded([&] {
        sptp::ProblemInputs in;
        in.id = spec->id ? spec->id : "user";
        in.domain_left = spec->domain_left;
        in.domain_right = spec->domain_right;
        in.a = sptp::Polynomial({spec->a, spec->a + spec->a_len});
        in.b = sptp::Polynomial({spec->b, spec->b + spec->b_len});
        in.f = sptp::Polynomial({spec->f, spec->f + spec->f_len});
        in.bc_left = spec->bc_left;
        in.bc_right = spec->bc_right;
        if (spec->alpha > 0.0) in.alpha = spec->alpha;
        if (spec->beta > 0.0) in.beta = spec->beta;
        wrap_problem(sptp::make_problem(std::move(in)), out);
    });
}

void sptp_problem_destroy(sptp_problem* problem) { delete problem; }

const char* sptp_problem_id(const sptp_problem* problem) { return problem ? problem->spec.id.c_str() : ""; }

int sptp_problem_has_exact(const sptp_problem* problem) { return problem && problem->spec.exact ? 1 : 0; }

sptp_status sptp_problem_exact(const sptp_problem* problem, double x, double epsilon, double* out) {
    SPTP_REQUIRE(problem && out, "null argument");
    if (!problem->spec.exact) return fail(SPTP_ERR_NO_EXACT, "problem has no exact solution");
    return guarded([&] { *out = (*problem->spec.exact)(x, sptp::Epsilon(epsilon).value()); });
}

sptp_status sptp_problem_constants(const sptp_problem* problem, double* alpha, double* beta) {
    SPTP_REQUIRE(problem, "problem is null");
    if (alpha) *alpha = problem->spec.alpha;
    if (beta) *beta = problem->spec.beta;
    return SPTP_OK;
}

sptp_status sptp_problem_validate(const sptp_problem* problem, int samples, sptp_violation* violations,
                                  size_t capacity, size_t* count) {
    SPTP_REQUIRE(problem && count, "null argument");
    SPTP_REQUIRE(violations || capacity == 0, "violations is null");
    return guarded([&] {
        const auto found = sptp::validate(problem->spec, samples);
        *count = found.size();
        for (size_t k = 0; k < std::min(capacity, found.size()); ++k)
            violations[k] = sptp_violation{static_cast<sptp_violation_kind>(found[k].kind), found[k].x};
    });
}

sptp_status sptp_solve(const sptp_problem* problem, sptp_scheme scheme, double epsilon, int n, double tau0,
                       double* x, double* u) {
    SPTP_REQUIRE(problem, "problem is null");
    return guarded([&] {
        const auto solution = sptp::solve_problem(problem->spec, {to_scheme(scheme), epsilon, n, tau0});
        if (x) std::copy(solution.mesh->nodes().begin(), solution.mesh->nodes().end(), x);
        if (u) std::copy(solution.values.begin(), solution.values.end(), u);
    });
}

sptp_status sptp_check_assumptions(const sptp_problem* problem, double epsilon, int n, double tau0,
                                   sptp_assumptions* out) {
    SPTP_REQUIRE(problem && out, "null argument");
    return guarded([&] {
        const sptp::Epsilon eps(epsilon);
        const auto& spec = problem->spec;
        const auto mesh = sptp::build_mesh({n, tau0, eps, spec.domain_left, spec.domain_right, std::nullopt});
        const auto r = sptp::check_assumptions(spec, mesh, eps, tau0);
        *out = sptp_assumptions{r.mesh_ratio,   r.tau_form_lhs, r.tau_form_rhs,   r.convection_ok ? 1 : 0,
                                r.reaction_lhs, r.alpha,        r.reaction_ok ? 1 : 0};
    });
}

void sptp_convergence_options_init(sptp_convergence_options* options) {
    if (!options) return;
    *options = sptp_convergence_options{SPTP_SCHEME_HYBRID, sptp::kDefaultTau0, SPTP_ERROR_AUTO, 0};
}

sptp_status sptp_run_convergence(const sptp_problem* problem, const double* epsilons, size_t epsilon_count,
                                 const int* ns, size_t n_count, const sptp_convergence_options* options,
                                 sptp_report** out) {
    SPTP_REQUIRE(problem && epsilons && ns && out, "null argument");
    return guarded([&] {
        sptp::ConvergenceOptions opts;
        if (options) {
            opts.scheme = to_scheme(options->scheme);
            opts.tau0 = options->tau0;
            opts.mode = to_mode(options->mode);
            opts.residual_check = options->residual_check != 0;
        }
        auto report = sptp::run_convergence(problem->spec, {epsilons, epsilon_count}, {ns, n_count}, opts);
        *out = new sptp_report{std::move(report)};
    });
}

void sptp_report_destroy(sptp_report* report) { delete report; }

size_t sptp_report_epsilon_count(const sptp_report* report) { return report ? report->report.epsilons.size() : 0; }

size_t sptp_report_n_count(const sptp_report* report) { return report ? report->report.ns.size() : 0; }

sptp_error_mode sptp_report_mode(const sptp_report* report) {
    if (!report) return SPTP_ERROR_AUTO;
    return report->report.mode == sptp::ErrorMode::Exact ? SPTP_ERROR_EXACT : SPTP_ERROR_DOUBLE_MESH;
}

sptp_status sptp_report_entry(const sptp_report* report, size_t epsilon_index, size_t n_index, sptp_entry* out) {
    SPTP_REQUIRE(report && out, "null argument");
    return guarded([&] {
        const auto& e = report->report.at(epsilon_index, n_index);
        *out = sptp_entry{e.epsilon,
                          e.n,
                          e.error,
                          e.order ? 1 : 0,
                          e.order.value_or(0.0),
                          e.tau0,
                          e.assumptions.passed() ? 1 : 0,
                          e.residual.value_or(-1.0)};
    });
}

sptp_status sptp_report_uniform(const sptp_report* report, size_t n_index, double* out) {
    SPTP_REQUIRE(report && out, "null argument");
    SPTP_REQUIRE(n_index < report->report.ns.size(), "n index out of range");
    *out = report->report.uniform_rows.at(report->report.ns[n_index]);
    return SPTP_OK;
}

void sptp_verify_config_init(sptp_verify_config* config) {
    if (!config) return;
    const sptp::VerifyConfig defaults;
    *config = sptp_verify_config{nullptr,
                                 0,
                                 nullptr,
                                 0,
                                 defaults.tau0,
                                 SPTP_SCHEME_HYBRID,
                                 defaults.random_samples,
                                 defaults.seed,
                                 0.0,
                                 defaults.oracle_max_n,
                                 defaults.checks};
}

sptp_status sptp_verify(const sptp_problem* problem, const sptp_verify_config* config, sptp_verify_report** out) {
    SPTP_REQUIRE(problem && out, "null argument");
    return guarded([&] {
        sptp::VerifyConfig cfg;
        if (config) {
            if (config->epsilons) cfg.epsilons.assign(config->epsilons, config->epsilons + config->epsilon_count);
            if (config->ns) cfg.ns.assign(config->ns, config->ns + config->n_count);
            cfg.tau0 = config->tau0;
            cfg.scheme = to_scheme(config->scheme);
            cfg.random_samples = config->random_samples;
            cfg.seed = config->seed;
            if (config->gamma > 0.0) cfg.gamma = config->gamma;
            cfg.oracle_max_n = config->oracle_max_n;
            cfg.checks = config->checks;
        }
        auto report = sptp::run_verification(problem->spec, cfg);
        *out = new sptp_verify_report{std::move(report)};
    });
}

size_t sptp_verify_count(const sptp_verify_report* report) { return report ? report->report.checks.size() : 0; }

sptp_status sptp_verify_result(const sptp_verify_report* report, size_t index, sptp_check_result* out) {
    SPTP_REQUIRE(report && out, "null argument");
    SPTP_REQUIRE(index < report->report.checks.size(), "check index out of range");
    const auto& r = report->report.checks[index];
    *out = sptp_check_result{static_cast<sptp_check>(r.check),
                             sptp::to_string(r.check),
                             r.passed ? 1 : 0,
                             r.margin,
                             r.cases,
                             r.skipped,
                             r.worst.c_str()};
    return SPTP_OK;
}

int sptp_verify_passed(const sptp_verify_report* report, int strict) {
    return report && report->report.passed(strict != 0) ? 1 : 0;
}

void sptp_verify_destroy(sptp_verify_report* report) { delete report; }

}  // extern "C"
