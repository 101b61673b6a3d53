/* C interface to the sptp solver library.
 *
 * Objects are opaque handles created by sptp_*_create / sptp_problem_* and
 * released with the matching *_destroy. Every fallible call returns an
 * sptp_status; on failure sptp_last_error() holds a message for the calling
 * thread until its next failing call.
 */
#ifndef SPTP_H
#define SPTP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SPTP_BUILDING)
#    define SPTP_API __declspec(dllexport)
#  else
#    define SPTP_API __declspec(dllimport)
#  endif
#else
#  define SPTP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sptp_status {
    SPTP_OK = 0,
    SPTP_ERR_INVALID_ARGUMENT = 1,
    SPTP_ERR_NUMERICAL = 2,      /* singular system, residual check */
    SPTP_ERR_NOT_NESTED = 3,
    SPTP_ERR_NO_EXACT = 4,
    SPTP_ERR_INTERNAL = 5
} sptp_status;

typedef enum sptp_scheme { SPTP_SCHEME_HYBRID = 0, SPTP_SCHEME_UPWIND = 1 } sptp_scheme;

typedef enum sptp_error_mode {
    SPTP_ERROR_AUTO = 0,
    SPTP_ERROR_EXACT = 1,
    SPTP_ERROR_DOUBLE_MESH = 2
} sptp_error_mode;

typedef enum sptp_violation_kind {
    SPTP_VIOLATION_REACTION_BOUND = 0,
    SPTP_VIOLATION_SIGN_PATTERN = 1,
    SPTP_VIOLATION_CONVECTION_BOUND = 2
} sptp_violation_kind;

typedef struct sptp_problem sptp_problem;
typedef struct sptp_report sptp_report;
typedef struct sptp_verify_report sptp_verify_report;

SPTP_API const char* sptp_version(void);
SPTP_API const char* sptp_last_error(void);
SPTP_API const char* sptp_status_string(sptp_status status);

SPTP_API double sptp_erf(double z);
SPTP_API double sptp_default_tau0(void);

/* ---- problems ---------------------------------------------------------- */

SPTP_API sptp_status sptp_problem_example1(sptp_problem** out);
SPTP_API sptp_status sptp_problem_example2(sptp_problem** out);

/* Polynomial coefficients in ascending powers. alpha or beta <= 0 selects the
 * derived default: alpha = min(|a(left)|, |a(right)|), beta = sampled min b. */
typedef struct sptp_polynomial_problem {
    const char* id;
    double domain_left;
    double domain_right;
    const double* a;
    size_t a_len;
    const double* b;
    size_t b_len;
    const double* f;
    size_t f_len;
    double bc_left;
    double bc_right;
    double alpha;
    double beta;
} sptp_polynomial_problem;

SPTP_API sptp_status sptp_problem_polynomial(const sptp_polynomial_problem* spec, sptp_problem** out);
SPTP_API void sptp_problem_destroy(sptp_problem* problem);

SPTP_API const char* sptp_problem_id(const sptp_problem* problem);
SPTP_API int sptp_problem_has_exact(const sptp_problem* problem);
SPTP_API sptp_status sptp_problem_exact(const sptp_problem* problem, double x, double epsilon, double* out);
SPTP_API sptp_status sptp_problem_constants(const sptp_problem* problem, double* alpha, double* beta);

typedef struct sptp_violation {
    sptp_violation_kind kind;
    double x;
} sptp_violation;

/* Writes up to `capacity` violations; *count receives the total found. */
SPTP_API sptp_status sptp_problem_validate(const sptp_problem* problem, int samples, sptp_violation* violations,
                                           size_t capacity, size_t* count);

/* ---- single solve ------------------------------------------------------- */

/* x and u must hold n + 1 doubles each; either may be NULL. */
SPTP_API sptp_status sptp_solve(const sptp_problem* problem, sptp_scheme scheme, double epsilon, int n,
                                double tau0, double* x, double* u);

typedef struct sptp_assumptions {
    double mesh_ratio;   /* h ||a|| / (2 eps), must be < 1 */
    double tau_form_lhs; /* 2 tau0 ||a|| */
    double tau_form_rhs; /* n / ln n */
    int convection_ok;
    double reaction_lhs; /* 2 ||b|| / n, must be <= alpha */
    double alpha;
    int reaction_ok;
} sptp_assumptions;

SPTP_API sptp_status sptp_check_assumptions(const sptp_problem* problem, double epsilon, int n, double tau0,
                                            sptp_assumptions* out);

/* ---- convergence studies ------------------------------------------------ */

typedef struct sptp_convergence_options {
    sptp_scheme scheme;
    double tau0;
    sptp_error_mode mode;
    int residual_check;
} sptp_convergence_options;

SPTP_API void sptp_convergence_options_init(sptp_convergence_options* options);

SPTP_API sptp_status sptp_run_convergence(const sptp_problem* problem, const double* epsilons, size_t epsilon_count,
                                          const int* ns, size_t n_count, const sptp_convergence_options* options,
                                          sptp_report** out);
SPTP_API void sptp_report_destroy(sptp_report* report);

typedef struct sptp_entry {
    double epsilon;
    int n;
    double error;
    int has_order;
    double order;
    double tau0;
    int assumptions_ok;
    double residual; /* negative when not computed */
} sptp_entry;

SPTP_API size_t sptp_report_epsilon_count(const sptp_report* report);
SPTP_API size_t sptp_report_n_count(const sptp_report* report);
SPTP_API sptp_error_mode sptp_report_mode(const sptp_report* report);
SPTP_API sptp_status sptp_report_entry(const sptp_report* report, size_t epsilon_index, size_t n_index,
                                       sptp_entry* out);
/* max over epsilon of the error at ns[n_index] */
SPTP_API sptp_status sptp_report_uniform(const sptp_report* report, size_t n_index, double* out);

/* ---- property verification ---------------------------------------------- */

typedef enum sptp_check {
    SPTP_CHECK_ASSUMPTIONS = 1u << 0,
    SPTP_CHECK_M_MATRIX = 1u << 1,
    SPTP_CHECK_MINIMUM_PRINCIPLE = 1u << 2,
    SPTP_CHECK_DISCRETE_STABILITY = 1u << 3,
    SPTP_CHECK_CONTINUOUS_STABILITY = 1u << 4,
    SPTP_CHECK_BARRIER = 1u << 5,
    SPTP_CHECK_SOLVER_ORACLE = 1u << 6,
    SPTP_CHECK_ALL = 0x7f
} sptp_check;

typedef struct sptp_verify_config {
    const double* epsilons; /* NULL selects the library default grid */
    size_t epsilon_count;
    const int* ns;
    size_t n_count;
    double tau0;
    sptp_scheme scheme;
    int random_samples;
    uint64_t seed;
    double gamma; /* <= 0: alpha / 4 */
    int oracle_max_n;
    unsigned checks;
} sptp_verify_config;

SPTP_API void sptp_verify_config_init(sptp_verify_config* config);

typedef struct sptp_check_result {
    sptp_check check;
    const char* name;
    int passed;
    double margin;
    size_t cases;
    size_t skipped;
    const char* worst; /* valid while the report lives */
} sptp_check_result;

SPTP_API sptp_status sptp_verify(const sptp_problem* problem, const sptp_verify_config* config,
                                 sptp_verify_report** out);
SPTP_API size_t sptp_verify_count(const sptp_verify_report* report);
SPTP_API sptp_status sptp_verify_result(const sptp_verify_report* report, size_t index, sptp_check_result* out);
SPTP_API int sptp_verify_passed(const sptp_verify_report* report, int strict);
SPTP_API void sptp_verify_destroy(sptp_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SPTP_H */
