#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "CLI11.hpp"
#include "sptp/sptp.h"

namespace sptp_cli {

namespace {

// Config problems (bad flags, bad files, inadmissible problems).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A library call failed; carries the status so the exit code can be chosen.
struct LibraryError : std::runtime_error {
    LibraryError(sptp_status status, const std::string& message) : std::runtime_error(message), status(status) {}
    sptp_status status;
};

void check(sptp_status status) {
    if (status != SPTP_OK) throw LibraryError(status, sptp_last_error());
}

struct ProblemDeleter {
    void operator()(sptp_problem* p) const { sptp_problem_destroy(p); }
};
struct ReportDeleter {
    void operator()(sptp_report* r) const { sptp_report_destroy(r); }
};
struct VerifyDeleter {
    void operator()(sptp_verify_report* r) const { sptp_verify_destroy(r); }
};
using ProblemPtr = std::unique_ptr<sptp_problem, ProblemDeleter>;
using ReportPtr = std::unique_ptr<sptp_report, ReportDeleter>;
using VerifyPtr = std::unique_ptr<sptp_verify_report, VerifyDeleter>;

// ---- formatting -------------------------------------------------------------

// 5 significant digits, exponent without padding: 2.6900E-2.
std::string format_error(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4E", v);
    std::string s(buf);
    const auto e = s.find('E');
    if (e == std::string::npos) return s;
    return s.substr(0, e + 1) + std::to_string(std::stoi(s.substr(e + 1)));
}

std::string format_order(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string format_general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// 10^-8 and 2^-16 style labels when the value is an exact power.
std::string format_epsilon(double eps) {
    for (int base : {10, 2}) {
        const int k = static_cast<int>(std::lround(std::log(eps) / std::log(static_cast<double>(base))));
        const double p = std::pow(static_cast<double>(base), k);
        if (std::abs(p - eps) <= 1e-12 * eps) return k == 0 ? "1" : std::to_string(base) + "^" + std::to_string(k);
    }
    return format_general(eps);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

// ---- parsing ----------------------------------------------------------------

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!trim(item).empty()) parts.push_back(trim(item));
    return parts;
}

double parse_real(const std::string& token, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("invalid " + what + " '" + token + "'");
}

int parse_int(const std::string& token, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("invalid " + what + " '" + token + "'");
}

// Accepts plain reals and base^exponent, e.g. 1e-8, 10^-8, 2^-16.
double parse_epsilon(const std::string& token) {
    double eps;
    const auto caret = token.find('^');
    if (caret == std::string::npos) {
        eps = parse_real(token, "epsilon");
    } else {
        const double base = parse_real(token.substr(0, caret), "epsilon");
        const double exponent = parse_real(token.substr(caret + 1), "epsilon");
        eps = std::pow(base, exponent);
    }
    if (!(eps > 0.0 && eps <= 1.0)) throw ConfigError("epsilon must lie in (0, 1], got '" + token + "'");
    return eps;
}

std::vector<double> parse_epsilons(const std::vector<std::string>& tokens) {
    std::vector<double> eps;
    for (const auto& t : tokens)
        for (const auto& part : split(t)) eps.push_back(parse_epsilon(part));
    return eps;
}

std::vector<int> parse_ns(const std::vector<std::string>& tokens) {
    std::vector<int> ns;
    for (const auto& t : tokens)
        for (const auto& part : split(t)) ns.push_back(parse_int(part, "n"));
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] % 4 != 0) throw ConfigError("n must be divisible by 4, got " + std::to_string(ns[k]));
        if (ns[k] < 8) throw ConfigError("n must be at least 8, got " + std::to_string(ns[k]));
        if (k > 0 && ns[k] <= ns[k - 1]) throw ConfigError("n values must be strictly ascending");
    }
    return ns;
}

std::vector<double> parse_coefficients(const std::string& text, const std::string& key) {
    std::vector<double> c;
    for (const auto& part : split(text)) c.push_back(parse_real(part, "coefficient in '" + key + "'"));
    if (c.empty()) throw ConfigError("[problem] " + key + " needs at least one coefficient");
    return c;
}

sptp_scheme parse_scheme(const std::string& s) {
    if (s == "hybrid") return SPTP_SCHEME_HYBRID;
    if (s == "upwind") return SPTP_SCHEME_UPWIND;
    throw ConfigError("unknown scheme '" + s + "' (expected hybrid or upwind)");
}

sptp_error_mode parse_mode(const std::string& s) {
    if (s == "auto") return SPTP_ERROR_AUTO;
    if (s == "exact") return SPTP_ERROR_EXACT;
    if (s == "double-mesh") return SPTP_ERROR_DOUBLE_MESH;
    throw ConfigError("unknown error mode '" + s + "' (expected auto, exact or double-mesh)");
}

// ---- run configuration --------------------------------------------------------

struct PolynomialProblem {
    std::string id = "custom";
    double domain_left = 0.0;
    double domain_right = 1.0;
    std::vector<double> a, b, f;
    double bc_left = 0.0;
    double bc_right = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct RunConfig {
    std::string problem = "example1";
    std::optional<PolynomialProblem> polynomial;
    std::string scheme = "hybrid";
    std::vector<double> epsilons;
    std::vector<int> ns;
    std::optional<double> tau0;
    std::string error_mode = "auto";
    std::string format = "csv";
    std::string output;
    std::string emit_plot_data;
    bool check_assumptions = false;
    bool residual_check = false;
};

// Raw command-line values; empty means "not given".
struct Flags {
    std::string config;
    std::string problem;
    std::string scheme;
    std::vector<std::string> eps;
    std::vector<std::string> ns;
    std::optional<double> tau0;
    std::string error_mode;
    std::string format;
    std::string output;
    std::string emit_plot_data;
    bool check_assumptions = false;
    bool residual_check = false;
};

using Section = boost::property_tree::ptree;

void reject_unknown(const Section& section, const std::string& name, const std::set<std::string>& known) {
    for (const auto& [key, value] : section)
        if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    Section tree;
    try {
        boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("cannot read config '" + path + "': " + e.message() +
                          (e.line() ? " (line " + std::to_string(e.line()) + ")" : ""));
    }
    for (const auto& [name, section] : tree) {
        if (name != "problem" && name != "grid" && name != "output")
            throw ConfigError("unknown section [" + name + "] in " + path);
        if (section.empty() && !section.data().empty())
            throw ConfigError("key '" + name + "' outside of a section in " + path);
    }

    auto real = [](const Section& s, const std::string& key, double fallback) {
        const auto v = s.get_optional<std::string>(key);
        return v ? parse_real(trim(*v), key) : fallback;
    };

    if (const auto problem = tree.get_child_optional("problem")) {
        reject_unknown(*problem, "problem",
                       {"name", "domain_left", "domain_right", "a", "b", "f", "bc_left", "bc_right", "alpha", "beta"});
        const auto name = problem->get<std::string>("name", "");
        if (problem->count("a") || problem->count("b") || problem->count("f")) {
            PolynomialProblem p;
            if (!name.empty()) p.id = name;
            for (const char* key : {"a", "b", "f"})
                if (!problem->count(key)) throw ConfigError(std::string("[problem] is missing '") + key + "'");
            p.a = parse_coefficients(problem->get<std::string>("a"), "a");
            p.b = parse_coefficients(problem->get<std::string>("b"), "b");
            p.f = parse_coefficients(problem->get<std::string>("f"), "f");
            p.domain_left = real(*problem, "domain_left", 0.0);
            p.domain_right = real(*problem, "domain_right", 1.0);
            p.bc_left = real(*problem, "bc_left", 0.0);
            p.bc_right = real(*problem, "bc_right", 0.0);
            p.alpha = real(*problem, "alpha", 0.0);
            p.beta = real(*problem, "beta", 0.0);
            cfg.polynomial = p;
            cfg.problem = p.id;
        } else if (!name.empty()) {
            cfg.problem = name;
        }
    }
    if (const auto grid = tree.get_child_optional("grid")) {
        reject_unknown(*grid, "grid", {"epsilons", "ns", "tau0", "scheme", "error_mode"});
        if (const auto v = grid->get_optional<std::string>("epsilons")) cfg.epsilons = parse_epsilons({*v});
        if (const auto v = grid->get_optional<std::string>("ns")) cfg.ns = parse_ns({*v});
        if (grid->count("tau0")) cfg.tau0 = real(*grid, "tau0", 0.0);
        cfg.scheme = trim(grid->get<std::string>("scheme", cfg.scheme));
        cfg.error_mode = trim(grid->get<std::string>("error_mode", cfg.error_mode));
    }
    if (const auto output = tree.get_child_optional("output")) {
        reject_unknown(*output, "output", {"format", "path", "plot_data"});
        cfg.format = trim(output->get<std::string>("format", cfg.format));
        cfg.output = trim(output->get<std::string>("path", cfg.output));
        cfg.emit_plot_data = trim(output->get<std::string>("plot_data", cfg.emit_plot_data));
    }
}

RunConfig resolve(const Flags& flags) {
    RunConfig cfg;
    if (!flags.config.empty()) load_config_file(flags.config, cfg);
    if (!flags.problem.empty()) {
        cfg.problem = flags.problem;
        cfg.polynomial.reset();
    }
    if (!flags.scheme.empty()) cfg.scheme = flags.scheme;
    if (!flags.eps.empty()) cfg.epsilons = parse_epsilons(flags.eps);
    if (!flags.ns.empty()) cfg.ns = parse_ns(flags.ns);
    if (flags.tau0) cfg.tau0 = flags.tau0;
    if (!flags.error_mode.empty()) cfg.error_mode = flags.error_mode;
    if (!flags.format.empty()) cfg.format = flags.format;
    if (!flags.output.empty()) cfg.output = flags.output;
    if (!flags.emit_plot_data.empty()) cfg.emit_plot_data = flags.emit_plot_data;
    cfg.check_assumptions = flags.check_assumptions;
    cfg.residual_check = flags.residual_check;

    if (cfg.tau0 && !(*cfg.tau0 > 0.0)) throw ConfigError("tau0 must be positive");
    if (cfg.format != "csv" && cfg.format != "markdown")
        throw ConfigError("unknown format '" + cfg.format + "' (expected csv or markdown)");
    parse_mode(cfg.error_mode);
    return cfg;
}

ProblemPtr make_problem(const RunConfig& cfg) {
    sptp_problem* raw = nullptr;
    if (cfg.polynomial) {
        const auto& p = *cfg.polynomial;
        sptp_polynomial_problem spec{};
        spec.id = p.id.c_str();
        spec.domain_left = p.domain_left;
        spec.domain_right = p.domain_right;
        spec.a = p.a.data();
        spec.a_len = p.a.size();
        spec.b = p.b.data();
        spec.b_len = p.b.size();
        spec.f = p.f.data();
        spec.f_len = p.f.size();
        spec.bc_left = p.bc_left;
        spec.bc_right = p.bc_right;
        spec.alpha = p.alpha;
        spec.beta = p.beta;
        check(sptp_problem_polynomial(&spec, &raw));
    } else if (cfg.problem == "example1") {
        check(sptp_problem_example1(&raw));
    } else if (cfg.problem == "example2") {
        check(sptp_problem_example2(&raw));
    } else {
        throw ConfigError("unknown problem '" + cfg.problem + "' (expected example1, example2 or a config file)");
    }
    ProblemPtr problem(raw);

    std::vector<sptp_violation> violations(8);
    std::size_t count = 0;
    check(sptp_problem_validate(problem.get(), 101, violations.data(), violations.size(), &count));
    if (count > 0) {
        std::ostringstream msg;
        msg << "problem '" << cfg.problem << "' is not admissible (" << count << " violation"
            << (count == 1 ? "" : "s") << ")";
        const char* names[] = {"reaction bound", "sign pattern", "convection bound"};
        for (std::size_t k = 0; k < std::min(count, violations.size()); ++k)
            msg << "\n  " << names[violations[k].kind] << " at x = " << violations[k].x;
        throw ConfigError(msg.str());
    }
    return problem;
}

double effective_tau0(const RunConfig& cfg) { return cfg.tau0.value_or(sptp_default_tau0()); }

ReportPtr convergence(const sptp_problem* problem, const RunConfig& cfg, sptp_scheme scheme) {
    sptp_convergence_options options;
    sptp_convergence_options_init(&options);
    options.scheme = scheme;
    options.tau0 = effective_tau0(cfg);
    options.mode = parse_mode(cfg.error_mode);
    options.residual_check = cfg.residual_check ? 1 : 0;
    sptp_report* raw = nullptr;
    check(sptp_run_convergence(problem, cfg.epsilons.data(), cfg.epsilons.size(), cfg.ns.data(), cfg.ns.size(),
                               &options, &raw));
    return ReportPtr(raw);
}

sptp_entry entry(const sptp_report* report, std::size_t e, std::size_t k) {
    sptp_entry out{};
    check(sptp_report_entry(report, e, k, &out));
    return out;
}

const char* mode_name(sptp_error_mode mode) {
    switch (mode) {
        case SPTP_ERROR_EXACT: return "exact";
        case SPTP_ERROR_DOUBLE_MESH: return "double-mesh";
        default: return "auto";
    }
}

// Writes to the output path when one is set, else to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    file << text;
    if (!file.flush()) throw ConfigError("cannot write output file '" + path + "'");
}

void report_assumptions(const sptp_report* report, const RunConfig& cfg, std::ostream& err) {
    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e)
        for (std::size_t k = 0; k < cfg.ns.size(); ++k) {
            const auto cell = entry(report, e, k);
            if (!cell.assumptions_ok)
                err << "warning: minimum-principle assumptions fail at eps=" << format_epsilon(cell.epsilon)
                    << " n=" << cell.n << "\n";
        }
}

// ---- table ------------------------------------------------------------------

struct TableRow {
    std::string label;
    std::vector<std::string> cells;
};

std::string render_table(const std::string& meta, const std::vector<int>& ns, const std::vector<TableRow>& rows,
                         const std::string& format) {
    std::ostringstream text;
    text << "# " << meta << "\n";
    if (format == "csv") {
        text << "epsilon";
        for (int n : ns) text << "," << n;
        text << "\n";
        for (const auto& row : rows) {
            text << csv_field(row.label);
            for (const auto& c : row.cells) text << "," << csv_field(c);
            text << "\n";
        }
    } else {
        text << "\n| epsilon |";
        for (int n : ns) text << " N=" << n << " |";
        text << "\n|---|";
        for (std::size_t k = 0; k < ns.size(); ++k) text << "---:|";
        text << "\n";
        for (const auto& row : rows) {
            text << "| " << row.label << " |";
            for (const auto& c : row.cells) text << " " << c << " |";
            text << "\n";
        }
    }
    return text.str();
}

std::vector<std::string> order_cells(const std::vector<double>& errors, const std::vector<int>& ns) {
    std::vector<std::string> cells(errors.size());
    for (std::size_t k = 0; k + 1 < errors.size(); ++k)
        if (ns[k + 1] == 2 * ns[k] && errors[k] > 0.0 && errors[k + 1] > 0.0)
            cells[k] = format_order(std::log2(errors[k] / errors[k + 1]));
    return cells;
}

std::string plot_csv(const std::vector<int>& ns, const std::vector<std::pair<std::string, std::vector<double>>>& columns) {
    std::ostringstream text;
    text << "n";
    for (const auto& [name, values] : columns) text << ",error_" << name;
    text << ",1/N,1/N^2\n";
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const double n = ns[k];
        text << ns[k];
        for (const auto& [name, values] : columns) text << "," << format_general(values[k]);
        text << "," << format_general(1.0 / n) << "," << format_general(1.0 / (n * n)) << "\n";
    }
    return text.str();
}

std::vector<double> error_column(const sptp_report* report, std::size_t eps_index, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = entry(report, eps_index, k).error;
    return v;
}

void cmd_table(const Flags& flags, std::ostream& out, std::ostream& err) {
    auto cfg = resolve(flags);
    if (cfg.epsilons.empty()) cfg.epsilons = {1e0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
    if (cfg.ns.empty()) cfg.ns = {16, 32, 64, 128, 256, 512, 1024};
    if (!cfg.emit_plot_data.empty() && cfg.epsilons.size() != 1)
        throw ConfigError("plot data needs exactly one epsilon");
    if (!cfg.emit_plot_data.empty() && cfg.ns.size() < 2) throw ConfigError("need at least two N values");
    const auto scheme = parse_scheme(cfg.scheme);
    const auto problem = make_problem(cfg);
    const auto report = convergence(problem.get(), cfg, scheme);

    std::vector<TableRow> rows;
    for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
        const auto errors = error_column(report.get(), e, cfg.ns.size());
        TableRow error_row{format_epsilon(cfg.epsilons[e]), {}};
        for (double v : errors) error_row.cells.push_back(format_error(v));
        rows.push_back(error_row);
        rows.push_back({"order", order_cells(errors, cfg.ns)});
    }
    std::vector<double> uniform(cfg.ns.size());
    for (std::size_t k = 0; k < cfg.ns.size(); ++k) check(sptp_report_uniform(report.get(), k, &uniform[k]));
    TableRow uniform_row{"uniform", {}};
    for (double v : uniform) uniform_row.cells.push_back(format_error(v));
    rows.push_back(uniform_row);
    rows.push_back({"order", order_cells(uniform, cfg.ns)});

    std::ostringstream meta;
    meta << "problem=" << sptp_problem_id(problem.get()) << " scheme=" << cfg.scheme
         << " tau0=" << format_general(effective_tau0(cfg)) << " error=" << mode_name(sptp_report_mode(report.get()));
    if (cfg.check_assumptions) report_assumptions(report.get(), cfg, err);
    emit(render_table(meta.str(), cfg.ns, rows, cfg.format), cfg.output, out);
    if (!cfg.emit_plot_data.empty())
        emit(plot_csv(cfg.ns, {{cfg.scheme, error_column(report.get(), 0, cfg.ns.size())}}), cfg.emit_plot_data, out);
}

// ---- plot-data ----------------------------------------------------------------

void cmd_plot_data(const Flags& flags, std::ostream& out, std::ostream& err) {
    Flags scheme_free = flags;
    scheme_free.scheme.clear();
    auto cfg = resolve(scheme_free);
    std::string scheme = flags.scheme.empty() ? "both" : flags.scheme;
    if (cfg.epsilons.empty()) cfg.epsilons = {1e-9};
    if (cfg.ns.empty()) cfg.ns = {16, 32, 64, 128, 256, 512, 1024};
    if (cfg.epsilons.size() != 1) throw ConfigError("plot-data needs exactly one epsilon");
    if (cfg.ns.size() < 2) throw ConfigError("need at least two N values");

    std::vector<std::pair<std::string, sptp_scheme>> schemes;
    if (scheme == "both" || scheme == "hybrid") schemes.emplace_back("hybrid", SPTP_SCHEME_HYBRID);
    if (scheme == "both" || scheme == "upwind") schemes.emplace_back("upwind", SPTP_SCHEME_UPWIND);
    if (schemes.empty()) throw ConfigError("unknown scheme '" + scheme + "' (expected hybrid, upwind or both)");

    const auto problem = make_problem(cfg);
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    for (const auto& [name, kind] : schemes) {
        const auto report = convergence(problem.get(), cfg, kind);
        if (cfg.check_assumptions) report_assumptions(report.get(), cfg, err);
        columns.emplace_back(name, error_column(report.get(), 0, cfg.ns.size()));
    }
    emit(plot_csv(cfg.ns, columns), cfg.output, out);
}

// ---- verify -------------------------------------------------------------------

struct VerifyFlags {
    bool strict = false;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> gamma;
    std::optional<int> oracle_max_n;
    std::vector<std::string> checks;
};

unsigned parse_checks(const std::vector<std::string>& tokens) {
    static const std::map<std::string, unsigned> names{
        {"assumptions", SPTP_CHECK_ASSUMPTIONS},
        {"m-matrix", SPTP_CHECK_M_MATRIX},
        {"minimum-principle", SPTP_CHECK_MINIMUM_PRINCIPLE},
        {"discrete-stability", SPTP_CHECK_DISCRETE_STABILITY},
        {"continuous-stability", SPTP_CHECK_CONTINUOUS_STABILITY},
        {"barrier", SPTP_CHECK_BARRIER},
        {"solver-oracle", SPTP_CHECK_SOLVER_ORACLE},
        {"all", SPTP_CHECK_ALL},
    };
    unsigned mask = 0;
    for (const auto& t : tokens)
        for (const auto& part : split(t)) {
            const auto it = names.find(part);
            if (it == names.end()) throw ConfigError("unknown check '" + part + "'");
            mask |= it->second;
        }
    return mask;
}

std::string format_margin(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.3e", v);
    return buf;
}

int cmd_verify(const Flags& flags, const VerifyFlags& vflags, std::ostream& out) {
    const auto cfg = resolve(flags);
    const auto problem = make_problem(cfg);

    sptp_verify_config config;
    sptp_verify_config_init(&config);
    if (!cfg.epsilons.empty()) {
        config.epsilons = cfg.epsilons.data();
        config.epsilon_count = cfg.epsilons.size();
    }
    if (!cfg.ns.empty()) {
        config.ns = cfg.ns.data();
        config.n_count = cfg.ns.size();
    }
    config.tau0 = effective_tau0(cfg);
    config.scheme = parse_scheme(cfg.scheme);
    if (vflags.samples) config.random_samples = *vflags.samples;
    if (vflags.seed) config.seed = *vflags.seed;
    if (vflags.gamma) config.gamma = *vflags.gamma;
    if (vflags.oracle_max_n) config.oracle_max_n = *vflags.oracle_max_n;
    if (!vflags.checks.empty()) config.checks = parse_checks(vflags.checks);

    sptp_verify_report* raw = nullptr;
    check(sptp_verify(problem.get(), &config, &raw));
    const VerifyPtr report(raw);

    std::ostringstream text;
    text << "# problem=" << sptp_problem_id(problem.get()) << " scheme=" << cfg.scheme
         << " tau0=" << format_general(config.tau0) << " strict=" << (vflags.strict ? "yes" : "no") << "\n";
    char line[512];
    std::snprintf(line, sizeof line, "%-22s %-6s %-11s %7s %8s  %s\n", "check", "result", "margin", "cases",
                  "skipped", "worst");
    text << line;
    for (std::size_t k = 0; k < sptp_verify_count(report.get()); ++k) {
        sptp_check_result r{};
        check(sptp_verify_result(report.get(), k, &r));
        const char* verdict = "PASS";
        if (!r.passed) verdict = r.check == SPTP_CHECK_ASSUMPTIONS && !vflags.strict ? "WARN" : "FAIL";
        else if (r.cases == 0) verdict = "SKIP";
        std::snprintf(line, sizeof line, "%-22s %-6s %-11s %7zu %8zu  %s\n", r.name, verdict,
                      format_margin(r.margin).c_str(), r.cases, r.skipped, r.worst);
        text << line;
    }
    const bool ok = sptp_verify_passed(report.get(), vflags.strict ? 1 : 0) != 0;
    text << "verify: " << (ok ? "PASS" : "FAIL") << "\n";
    emit(text.str(), cfg.output, out);
    return ok ? kOk : kVerificationFailure;
}

// ---- command line -------------------------------------------------------------

void add_common(CLI::App& cmd, Flags& flags) {
    cmd.add_option("--config", flags.config, "INI file with [problem], [grid], [output] sections")
        ->check(CLI::ExistingFile);
    cmd.add_option("--problem", flags.problem, "example1 or example2");
    cmd.add_option("--eps", flags.eps, "epsilon values, e.g. 1e-8,10^-9,2^-16")->delimiter(',');
    cmd.add_option("--n", flags.ns, "mesh interval counts, ascending, divisible by 4")->delimiter(',');
    cmd.add_option("--tau0", flags.tau0, "transition-parameter multiplier");
    cmd.add_option("--output,-o", flags.output, "output file (default stdout)");
}

void add_study(CLI::App& cmd, Flags& flags) {
    cmd.add_option("--error-mode", flags.error_mode, "auto, exact or double-mesh");
    cmd.add_flag("--check-assumptions", flags.check_assumptions, "warn about cells violating the mesh conditions");
    cmd.add_flag("--residual-check", flags.residual_check, "fail when a solve leaves a large residual");
}

int exit_code_for(sptp_status status) {
    switch (status) {
        case SPTP_ERR_INVALID_ARGUMENT:
        case SPTP_ERR_NO_EXACT: return kConfigError;
        default: return kNumericalFailure;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shishkin-mesh solver for singularly perturbed turning-point problems", "sptp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sptp_version()));

    Flags flags;
    VerifyFlags vflags;

    auto* table = app.add_subcommand("table", "error and order table over an (epsilon, n) grid");
    add_common(*table, flags);
    add_study(*table, flags);
    table->add_option("--scheme", flags.scheme, "hybrid or upwind");
    table->add_option("--format", flags.format, "csv or markdown");
    table->add_option("--emit-plot-data", flags.emit_plot_data, "also write plot data (single epsilon) to this file");

    auto* plot = app.add_subcommand("plot-data", "errors per n for loglog plots");
    add_common(*plot, flags);
    add_study(*plot, flags);
    plot->add_option("--scheme", flags.scheme, "hybrid, upwind or both (default both)");

    auto* verify = app.add_subcommand("verify", "check discrete minimum-principle properties");
    add_common(*verify, flags);
    verify->add_option("--scheme", flags.scheme, "hybrid or upwind");
    verify->add_flag("--strict", vflags.strict, "treat assumption failures as fatal");
    verify->add_option("--samples", vflags.samples, "random right-hand sides per cell");
    verify->add_option("--seed", vflags.seed, "random seed");
    verify->add_option("--gamma", vflags.gamma, "barrier decay rate (default alpha/4)");
    verify->add_option("--oracle-max-n", vflags.oracle_max_n, "largest n compared against dense elimination");
    verify->add_option("--checks", vflags.checks, "subset of checks, comma separated")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*table) {
            cmd_table(flags, out, err);
            return kOk;
        }
        if (*plot) {
            cmd_plot_data(flags, out, err);
            return kOk;
        }
        return cmd_verify(flags, vflags, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const LibraryError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalFailure;
    }
}

}  // namespace sptp_cli
