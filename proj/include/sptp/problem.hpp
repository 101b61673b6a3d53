#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sptp {

using CoefficientFn = std::function<double(double)>;
using ExactFn = std::function<double(double x, double epsilon)>;

/// Singular perturbation parameter, 0 < value <= 1.
class Epsilon {
public:
    explicit Epsilon(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// eps u'' + a(x) u' - b(x) u = f(x) on (left, right), u(left) = A, u(right) = B.
///
/// a must change sign once, from positive to negative, so the solution has
/// outflow layers at both ends. alpha bounds |a| at the endpoints from below,
/// beta bounds b from below over the closed domain. Coefficient callables
/// must be pure; a spec is immutable once built and safe to share.
struct ProblemSpec {
    std::string id;
    double domain_left = 0.0;
    double domain_right = 1.0;
    CoefficientFn a;
    CoefficientFn b;
    CoefficientFn f;
    double bc_left = 0.0;
    double bc_right = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<ExactFn> exact;

    double length() const noexcept { return domain_right - domain_left; }
};

/// Inputs for make_problem. alpha and beta are derived when left empty:
/// alpha = min(|a(left)|, |a(right)|), beta = sampled minimum of b.
struct ProblemInputs {
    std::string id = "user";
    double domain_left = 0.0;
    double domain_right = 1.0;
    CoefficientFn a;
    CoefficientFn b;
    CoefficientFn f;
    double bc_left = 0.0;
    double bc_right = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<ExactFn> exact;
};

inline constexpr int kDefaultSamples = 1001;

ProblemSpec make_problem(ProblemInputs inputs, int samples = kDefaultSamples);

/// Polynomial in ascending powers, c0 + c1 x + c2 x^2 + ...
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients);

    double operator()(double x) const noexcept;
    std::span<const double> coefficients() const noexcept { return coefficients_; }

private:
    std::vector<double> coefficients_;
};

enum class ViolationKind {
    ReactionBound,    // b(x) < beta, or beta <= 0
    SignPattern,      // a does not change sign exactly once from + to -
    ConvectionBound,  // |a| < alpha at an endpoint
};

struct Violation {
    ViolationKind kind;
    double x;
    std::string message;
};

const char* to_string(ViolationKind kind) noexcept;

/// Samples the closed domain uniformly at `samples` points (samples >= 3) and
/// reports every failed admissibility condition. Violations are data.
std::vector<Violation> validate(const ProblemSpec& problem, int samples = 101);

/// eps u'' - 2(2x-1) u' - 4u = 0 on (0,1), u(0) = u(1) = 1,
/// u(x) = exp(-2x(1-x)/eps).
ProblemSpec example1();

/// eps u'' - 2(2x-1) u' - 4u = 4(4x-1) on (0,1), u(0) = u(1) = 1,
/// u(x) = -2x + e(x) (2 + erf((2x-1)/sqrt(2 eps)) / erf(1/sqrt(2 eps))),
/// e(x) = exp(-2x(1-x)/eps).
ProblemSpec example2();

}  // namespace sptp
