#include "sptp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sptp/error.hpp"
#include "sptp/special.hpp"

namespace sptp {

Epsilon::Epsilon(double value) : value_(value) {
    if (!(value > 0.0) || value > 1.0) {
        std::ostringstream msg;
        msg << "epsilon must lie in (0, 1], got " << value;
        throw InvalidArgument(msg.str());
    }
}

Polynomial::Polynomial(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {}

double Polynomial::operator()(double x) const noexcept {
    double value = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * x + *it;
    return value;
}

const char* to_string(ViolationKind kind) noexcept {
    switch (kind) {
        case ViolationKind::ReactionBound: return "reaction bound";
        case ViolationKind::SignPattern: return "sign pattern";
        case ViolationKind::ConvectionBound: return "convection bound";
    }
    return "?";
}

namespace {

std::vector<double> sample_points(const ProblemSpec& problem, int samples) {
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        xs[k] = problem.domain_left + problem.length() * k / (samples - 1);
    xs.back() = problem.domain_right;
    return xs;
}

std::string describe(const char* what, double x) {
    std::ostringstream msg;
    msg << what << " at x = " << x;
    return msg.str();
}

}  // namespace

ProblemSpec make_problem(ProblemInputs inputs, int samples) {
    if (!inputs.a || !inputs.b || !inputs.f) throw InvalidArgument("coefficients a, b and f are required");
    if (!(inputs.domain_left < inputs.domain_right))
        throw InvalidArgument("domain_left must be below domain_right");
    if (samples < 3) throw InvalidArgument("need at least 3 samples");

    ProblemSpec spec;
    spec.id = std::move(inputs.id);
    spec.domain_left = inputs.domain_left;
    spec.domain_right = inputs.domain_right;
    spec.a = std::move(inputs.a);
    spec.b = std::move(inputs.b);
    spec.f = std::move(inputs.f);
    spec.bc_left = inputs.bc_left;
    spec.bc_right = inputs.bc_right;
    spec.exact = std::move(inputs.exact);

    spec.alpha = inputs.alpha.value_or(
        std::min(std::abs(spec.a(spec.domain_left)), std::abs(spec.a(spec.domain_right))));
    if (inputs.beta) {
        spec.beta = *inputs.beta;
    } else {
        double lowest = std::numeric_limits<double>::infinity();
        for (double x : sample_points(spec, samples)) lowest = std::min(lowest, spec.b(x));
        spec.beta = lowest;
    }
    return spec;
}

std::vector<Violation> validate(const ProblemSpec& problem, int samples) {
    if (samples < 3) throw InvalidArgument("need at least 3 samples");
    std::vector<Violation> violations;
    const auto xs = sample_points(problem, samples);

    for (double x : xs) {
        const double b = problem.b(x);
        if (!(b >= problem.beta && b > 0.0))
            violations.push_back({ViolationKind::ReactionBound, x, describe("b(x) below beta", x)});
    }

    // Sign changes of a, skipping exact zeros.
    int last_sign = 0;
    double last_x = xs.front();
    int changes = 0;
    bool wrong_direction = false;
    double first_change = xs.front();
    for (double x : xs) {
        const double a = problem.a(x);
        const int sign = (a > 0.0) - (a < 0.0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            if (changes == 0) first_change = 0.5 * (last_x + x);
            ++changes;
            if (last_sign < 0) wrong_direction = true;
        }
        last_sign = sign;
        last_x = x;
    }
    if (changes == 0) {
        violations.push_back({ViolationKind::SignPattern, problem.domain_left, "a has no turning point"});
    } else if (changes > 1) {
        violations.push_back({ViolationKind::SignPattern, first_change,
                              describe("a changes sign more than once, first", first_change)});
    } else if (wrong_direction) {
        violations.push_back({ViolationKind::SignPattern, first_change,
                              describe("a changes sign from - to +", first_change)});
    }

    for (double x : {problem.domain_left, problem.domain_right}) {
        if (!(std::abs(problem.a(x)) >= problem.alpha && problem.alpha > 0.0))
            violations.push_back({ViolationKind::ConvectionBound, x, describe("|a(x)| below alpha", x)});
    }
    return violations;
}

namespace {

double layer_factor(double x, double eps) { return std::exp(-2.0 * x * (1.0 - x) / eps); }

ProblemInputs turning_point_inputs(std::string id) {
    ProblemInputs in;
    in.id = std::move(id);
    in.domain_left = 0.0;
    in.domain_right = 1.0;
    in.a = [](double x) { return -2.0 * (2.0 * x - 1.0); };
    in.b = [](double) { return 4.0; };
    in.bc_left = 1.0;
    in.bc_right = 1.0;
    in.alpha = 2.0;
    in.beta = 4.0;
    return in;
}

}  // namespace

ProblemSpec example1() {
    auto in = turning_point_inputs("example1");
    in.f = [](double) { return 0.0; };
    in.exact = [](double x, double eps) { return layer_factor(x, eps); };
    return make_problem(std::move(in));
}

ProblemSpec example2() {
    auto in = turning_point_inputs("example2");
    in.f = [](double x) { return 4.0 * (4.0 * x - 1.0); };
    in.exact = [](double x, double eps) {
        const double root = std::sqrt(2.0 * eps);
        const double e = layer_factor(x, eps);
        return -2.0 * x + e * (2.0 + sptp::erf((2.0 * x - 1.0) / root) / sptp::erf(1.0 / root));
    };
    return make_problem(std::move(in));
}

}  // namespace sptp
