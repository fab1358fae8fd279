#include "painleve/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "painleve/analysis.hpp"
#include "painleve/glvortex.hpp"
#include "painleve/painleve1d.hpp"
#include "painleve/vortexfield.hpp"

namespace painleve::cli {
namespace {

const std::map<std::string, Command> kCommands{{"hm", Command::hm},
                                                {"gl", Command::gl},
                                                {"vortex", Command::vortex},
                                                {"verify", Command::verify},
                                                {"rescale", Command::rescale}};

std::string command_name(Command c) {
    for (const auto& [name, value] : kCommands)
        if (value == c) return name;
    return "?";
}

Index parse_count(const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("bad grid count '" + text + "'");
    }
    if (used != text.size()) throw InvalidArgument("bad grid count '" + text + "'");
    if (v < 3) throw InvalidArgument("grid count must be at least 3, got '" + text + "'");
    return static_cast<Index>(v);
}

Index grid_1d(const RunConfig& c, Index fallback) {
    if (c.grid.empty()) return fallback;
    if (c.grid.find('x') != std::string::npos) throw InvalidArgument("1D command takes --grid N, got " + c.grid);
    return parse_count(c.grid);
}

std::pair<Index, Index> grid_2d(const RunConfig& c) {
    if (c.grid.empty()) return {321, 241};
    const auto pos = c.grid.find('x');
    if (pos == std::string::npos) throw InvalidArgument("2D command takes --grid N1xN2, got " + c.grid);
    return {parse_count(c.grid.substr(0, pos)), parse_count(c.grid.substr(pos + 1))};
}

HmProblem hm_problem(const RunConfig& c) {
    HmProblem p;
    p.grid = build_grid1(c.x1_min.value_or(-12.0), c.x1_max.value_or(12.0), grid_1d(c, 4801));
    p.newton_tol = c.tol.value_or(1e-10);
    p.max_iter = c.max_iter.value_or(50);
    p.validate();
    return p;
}

GlProblem gl_problem(const RunConfig& c) {
    if (c.n < 3) throw InvalidArgument("--n must be at least 3 so that the vortex dimension n-1 is at least 2");
    GlProblem p;
    p.d = c.n - 1;
    p.grid = build_grid1(0.0, c.r_max.value_or(20.0), grid_1d(c, 4001));
    p.newton_tol = c.tol.value_or(1e-10);
    p.max_iter = c.max_iter.value_or(50);
    p.validate();
    return p;
}

VortexProblem vortex_problem(const RunConfig& c) {
    const auto [n1, n2] = grid_2d(c);
    VortexProblem p;
    p.n = c.n;
    p.grid = Grid2D{build_grid1(c.x1_min.value_or(-8.0), c.x1_max.value_or(8.0), n1),
                    build_grid1(0.0, c.sigma_max.value_or(12.0), n2)};
    p.newton_tol = c.tol.value_or(1e-8);
    p.max_iter = c.max_iter.value_or(50);
    p.flow_steps = c.flow_steps;
    p.flow_dt = c.flow_dt;
    p.validate();
    return p;
}

bool wants(const RunConfig& c, const std::string& name) {
    return std::find(c.checks.begin(), c.checks.end(), "all") != c.checks.end() ||
           std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
}

CheckReport direction_check(const Field1D& h) {
    const double scalar = hm_residual(h).values().lpNorm<Eigen::Infinity>();
    const std::array<std::array<double, 2>, 3> units{{{1.0, 0.0}, {std::sqrt(0.5), std::sqrt(0.5)}, {0.6, 0.8}}};
    std::vector<double> norms;
    for (const auto& u : units) norms.push_back(verify_1d_vector_direction(h, u));
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    CheckReport r;
    r.name = "direction";
    r.tolerance = 1e-12;
    r.worst_violation = *hi - *lo;
    r.passed = r.worst_violation <= r.tolerance && *hi <= 10.0 * scalar + 1e-300;
    std::ostringstream os;
    os << std::setprecision(6) << "residual norms " << norms[0] << ", " << norms[1] << ", " << norms[2]
       << " against scalar residual " << scalar;
    r.details = os.str();
    return r;
}

std::vector<CheckReport> run_checks(const RunConfig& c, const VortexProblem& p, const HmSolution& h,
                                    const VortexField& v) {
    std::vector<CheckReport> out;
    if (wants(c, "hm-asymptotics")) out.push_back(check_hm_asymptotics(h));
    if (wants(c, "hm-decay")) out.push_back(check_decay("hm_decay", h.h, 3.0, 8.0, 0.05));
    if (wants(c, "positivity")) out.push_back(check_positivity(v));
    if (wants(c, "amplitude")) out.push_back(check_amplitude_bound(v, v.h_used));
    if (wants(c, "monotonicity")) out.push_back(check_monotonicity(v));
    if (wants(c, "corner")) out.push_back(check_corner_mismatch(v, 2e-2));
    if (wants(c, "minimality")) {
        const auto bumps = random_admissible_bumps(v.y.grid(), c.bumps, c.seed);
        out.push_back(check_minimality(v, bumps));
    }
    if (wants(c, "rescaled-limit")) out.push_back(check_rescaled_limit(v, c.slices, c.tau_max, c.tau_count, 0.1));
    if (wants(c, "decay")) {
        const double b = std::min(7.0, p.x1_max() - 1.0);
        out.push_back(check_decay("vortex_decay", sigma_trace(v, 6.0), 3.0, b, 0.10));
    }
    if (wants(c, "slab")) {
        VortexProblem slab = p;
        const double h2 = p.grid.axis2.spacing();
        slab.grid.axis2 = build_grid1(0.0, 6.0, static_cast<Index>(std::llround(6.0 / h2)) + 1);
        out.push_back(verify_slab_equals_h(slab, h.h));
    }
    if (wants(c, "direction")) out.push_back(direction_check(h.h));
    return out;
}

void print_checks(const std::vector<CheckReport>& checks, std::ostream& out) {
    for (const auto& r : checks) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << std::setprecision(6) << r.worst_violation
            << " at (" << r.worst_location[0] << ", " << r.worst_location[1] << ") tol=" << r.tolerance
            << (r.strict ? " (strict)" : "") << " : " << r.details << "\n";
    }
}

void write_report(const std::vector<CheckReport>& checks, const std::string& path) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : checks) {
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"worst_violation", r.worst_violation},
                       {"worst_location", r.worst_location},
                       {"tolerance", r.tolerance},
                       {"strict", r.strict},
                       {"details", r.details}});
    }
    write_atomically(path, arr.dump(1) + "\n");
}

int finish_checks(const RunConfig& c, const std::vector<CheckReport>& checks, std::ostream& out) {
    print_checks(checks, out);
    if (!c.report.empty()) write_report(checks, c.report);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.passed; });
    return ok ? kOk : kCheckFailed;
}

int run_hm(const RunConfig& c, std::ostream& out) {
    const HmSolution s = solve_hastings_mcleod(hm_problem(c));
    out << "hm: converged in " << s.report.iterations << " iterations, residual " << s.report.final_residual
        << ", h(0) = " << std::setprecision(12) << (s.h.grid().contains(0.0) ? interp_linear(s.h, 0.0) : NAN) << "\n";
    if (!c.out.empty()) {
        export_field(s.h, c.format, c.out, {c.n, s.report.tolerance, s.report.final_residual, describe(c)}, "x", "h");
    }
    if (c.checks.empty()) return kOk;
    std::vector<CheckReport> checks;
    if (wants(c, "hm-asymptotics")) checks.push_back(check_hm_asymptotics(s));
    if (wants(c, "hm-decay")) checks.push_back(check_decay("hm_decay", s.h, 3.0, 8.0, 0.05));
    if (wants(c, "direction")) checks.push_back(direction_check(s.h));
    return finish_checks(c, checks, out);
}

int run_gl(const RunConfig& c, std::ostream& out) {
    const GlProfile s = solve_gl_profile(gl_problem(c));
    const double slope = (s.f[1] - s.f[0]) / s.f.grid().spacing();
    out << "gl: d = " << c.n - 1 << ", converged in " << s.report.iterations << " iterations, residual "
        << s.report.final_residual << ", f'(0) ~ " << std::setprecision(8) << slope << "\n";
    if (!c.out.empty()) {
        export_field(s.f, c.format, c.out, {c.n, s.report.tolerance, s.report.final_residual, describe(c)}, "r", "f");
    }
    return kOk;
}

struct Solved {
    VortexProblem problem;
    HmSolution h;
    VortexField field;
};

Solved solve_all(const RunConfig& c) {
    VortexProblem p = vortex_problem(c);
    HmSolution h = solve_hastings_mcleod(vortex_hm_problem(p));
    const GlProfile gl = solve_gl_profile(vortex_gl_problem(p));
    VortexField v = solve_vortex(p, h.h, gl.f);
    return {std::move(p), std::move(h), std::move(v)};
}

int run_vortex(const RunConfig& c, std::ostream& out) {
    const Solved s = solve_all(c);
    out << "vortex: n = " << c.n << ", " << s.field.report.flow_steps << " flow steps, "
        << s.field.report.iterations << " Newton iterations, residual " << s.field.report.final_residual
        << ", corner mismatch " << s.field.report.corner_mismatch << "\n";
    if (!c.out.empty()) {
        export_field(s.field.y, c.format, c.out,
                     {c.n, s.field.report.tolerance, s.field.report.final_residual, describe(c)});
    }
    if (c.checks.empty()) return kOk;
    return finish_checks(c, run_checks(c, s.problem, s.h, s.field), out);
}

int run_rescale(const RunConfig& c, std::ostream& out) {
    const Solved s = solve_all(c);
    const RescaledField r = rescale_slices(s.field, c.slices, c.tau_max, c.tau_count);
    std::string csv = "t1,tau,value,eta\n";
    nlohmann::ordered_json slices = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < r.t1_slices.size(); ++k) {
        const double err = gl_comparison_error(r.values[k], s.field.gl_used);
        out << "t1 = " << r.t1_slices[k] << " (x1 = " << rescaled_x1(r.t1_slices[k]) << "): sup error " << err << "\n";
        std::vector<double> eta;
        for (Index i = 0; i < r.tau_grid.count(); ++i) {
            const double tau = r.tau_grid.node(i);
            eta.push_back(interp_linear(s.field.gl_used, tau));
            csv += format_double(r.t1_slices[k]) + "," + format_double(tau) + "," + format_double(r.values[k][i]) +
                   "," + format_double(eta.back()) + "\n";
        }
        slices.push_back({{"t1", r.t1_slices[k]},
                          {"x1", rescaled_x1(r.t1_slices[k])},
                          {"error", err},
                          {"values", std::vector<double>(r.values[k].values().begin(), r.values[k].values().end())},
                          {"eta", eta}});
    }
    if (!c.out.empty()) {
        if (c.format == Format::csv) {
            write_atomically(c.out, csv);
        } else {
            nlohmann::ordered_json j;
            j["tau"] = {{"start", 0.0}, {"end", c.tau_max}, {"count", c.tau_count}};
            j["slices"] = slices;
            j["meta"] = {{"n", c.n}, {"config", describe(c)}};
            write_atomically(c.out, j.dump(1) + "\n");
        }
    }
    return kOk;
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"all",         "hm-asymptotics", "hm-decay", "positivity",
                                                "amplitude",   "monotonicity",   "corner",   "minimality",
                                                "rescaled-limit", "decay",       "slab",     "direction"};
    return names;
}

std::optional<RunConfig> parse_run_config(const std::vector<std::string>& args, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Hastings-McLeod, Ginzburg-Landau vortex and reduced vortex-field solver", "painleve_cli"};
    std::string command;
    std::string format = "csv";
    std::string checks;
    std::string slices;
    app.add_option("command", command, "hm | gl | vortex | verify | rescale")->required();
    app.add_option("--n", c.n, "ambient dimension n (vortex dimension n-1)");
    app.add_option("--x1-min", c.x1_min, "left end of the x1 interval");
    app.add_option("--x1-max", c.x1_max, "right end of the x1 interval");
    app.add_option("--sigma-max", c.sigma_max, "top of the sigma interval");
    app.add_option("--r-max", c.r_max, "radius of the vortex-profile interval");
    app.add_option("--grid", c.grid, "node count N, or N1xN2 for 2D commands");
    app.add_option("--tol", c.tol, "Newton residual tolerance (sup norm)");
    app.add_option("--max-iter", c.max_iter, "Newton iteration cap");
    app.add_option("--flow-steps", c.flow_steps, "gradient-flow steps before Newton");
    app.add_option("--flow-dt", c.flow_dt, "gradient-flow time step");
    app.add_option("--out", c.out, "output file");
    app.add_option("--format", format, "csv | json");
    app.add_option("--check", checks, "comma-separated checks, or all");
    app.add_option("--report", c.report, "write the check reports as JSON");
    app.add_option("--slices", slices, "comma-separated t1 values for rescale");
    app.add_option("--tau-max", c.tau_max, "rescaled radial window");
    app.add_option("--tau-count", c.tau_count, "rescaled radial samples");
    app.add_option("--bumps", c.bumps, "random bumps for the minimality check");
    app.add_option("--seed", c.seed, "seed for the random bumps");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw InvalidArgument(e.what());
    }

    const auto it = kCommands.find(command);
    if (it == kCommands.end()) throw InvalidArgument("unknown command '" + command + "'");
    c.command = it->second;
    c.format = parse_format(format);

    auto split = [](const std::string& text) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) parts.push_back(item);
        }
        return parts;
    };
    for (const auto& name : split(checks)) {
        const auto& known = check_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw InvalidArgument("unknown check '" + name + "'");
        }
        c.checks.push_back(name);
    }
    if (c.command == Command::verify && c.checks.empty()) c.checks.push_back("all");
    if (!slices.empty()) {
        c.slices.clear();
        for (const auto& s : split(slices)) {
            try {
                c.slices.push_back(std::stod(s));
            } catch (const std::exception&) {
                throw InvalidArgument("bad slice value '" + s + "'");
            }
        }
    }
    if (c.n < 3) throw InvalidArgument("--n must be at least 3");
    if (c.tau_count < 3) throw InvalidArgument("--tau-count must be at least 3");
    if (!(c.tau_max > 0.0)) throw InvalidArgument("--tau-max must be positive");
    if (c.bumps < 1) throw InvalidArgument("--bumps must be positive");
    return c;
}

std::string describe(const RunConfig& c) {
    std::ostringstream os;
    os << std::setprecision(17) << command_name(c.command) << " n=" << c.n;
    const auto opt = [&](const char* name, const std::optional<double>& v) {
        if (v) os << " " << name << "=" << *v;
    };
    opt("x1_min", c.x1_min);
    opt("x1_max", c.x1_max);
    opt("sigma_max", c.sigma_max);
    opt("r_max", c.r_max);
    opt("tol", c.tol);
    if (!c.grid.empty()) os << " grid=" << c.grid;
    if (c.max_iter) os << " max_iter=" << *c.max_iter;
    os << " flow_steps=" << c.flow_steps << " flow_dt=" << c.flow_dt;
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const std::optional<RunConfig> config = parse_run_config(args, out);
        if (!config) return kOk;
        switch (config->command) {
            case Command::hm: return run_hm(*config, out);
            case Command::gl: return run_gl(*config, out);
            case Command::vortex:
            case Command::verify: return run_vortex(*config, out);
            case Command::rescale: return run_rescale(*config, out);
        }
        return kFailure;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const InvariantViolation& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const SupportViolation& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const OutOfDomain& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const InsufficientCoverage& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace painleve::cli
