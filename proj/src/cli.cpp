#include "expop/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>

#include "expop/errors.hpp"
#include "expop/kernel.hpp"
#include "expop/moments.hpp"
#include "expop/operators.hpp"

namespace expop::cli {

namespace {

using nlohmann::json;

/// Bad flag value detected after parsing; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& flag, const std::string& msg)
        : std::runtime_error(flag + ": " + msg) {}
};

struct Options {
    double lambda = 0.0;
    std::string a_text;
    double x = 0.0;
    double nu = 0.0;
    int p = 0;
    int max_p = 6;
    std::optional<double> theta;
    double rel_tol = 1e-10;
    double delta = 0.0;
    double growth = 0.0;
    std::string fn;
    std::string format;
    std::string out;
    std::string config;
};

AParameter parse_a(const std::string& text) {
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "PW") {
        return AParameter::pw();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
        throw UsageError("--a", "expected a positive number or PW, got '" + text + "'");
    }
    return AParameter::of(v);
}

double require_numeric_a(const std::string& text) {
    const AParameter a = parse_a(text);
    if (a.post_widder) {
        throw UsageError("--a", "PW is only accepted by 'apply' and 'converge'");
    }
    return a.value;
}

std::string cell_text(const Options& o) {
    return "lambda=" + format_number(o.lambda) + ", a=" + o.a_text + ", x=" + format_number(o.x);
}

SmoothFunction function_from(const Options& o) {
    if (o.fn == "exp" && !o.theta) {
        throw UsageError("--theta", "required when --fn exp");
    }
    return make_function(o.fn, o.theta);
}

QuadConfig quad_from(const Options& o) {
    QuadConfig cfg;
    cfg.rel_tol = o.rel_tol;
    return cfg;
}

// Header + one row, a JSON object, or just the value(s) when no format is
// requested for a scalar command.
std::string render_record(const Options& o, const std::vector<std::string>& names,
                          const std::vector<double>& values, bool bare_default) {
    if (o.format.empty() && bare_default) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            s += (i ? "," : "") + format_number(values[i]);
        }
        return s + "\n";
    }
    if (o.format == "json") {
        json j = json::object();
        for (std::size_t i = 0; i < names.size(); ++i) {
            j[names[i]] = values[i];
        }
        return j.dump(2) + "\n";
    }
    std::string header;
    std::string row;
    for (std::size_t i = 0; i < names.size(); ++i) {
        header += (i ? "," : "") + names[i];
        row += (i ? "," : "") + format_number(values[i]);
    }
    return header + "\n" + row + "\n";
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
    if (o.out.empty()) {
        out << content;
    } else {
        write_atomically(o.out, content);
    }
}

std::string run_apply(const Options& o) {
    const AParameter a = parse_a(o.a_text);
    const SmoothFunction f = function_from(o);
    const QuadConfig cfg = quad_from(o);
    double value = 0.0;
    if (a.post_widder) {
        if (o.p != 0) {
            throw UsageError("--p", "derivatives are not available for the Post-Widder operator");
        }
        value = apply_post_widder(o.lambda, f.f, o.x, cfg);
    } else {
        value = apply_T_derivative(OperatorParams(o.lambda, a.value), f.f, o.x, o.p, cfg);
    }
    return render_record(o, {"value"}, {value}, true);
}

std::string run_moments(const Options& o) {
    const OperatorParams params(o.lambda, require_numeric_a(o.a_text));
    const auto raw = raw_moments_jet(params, o.x, o.max_p);
    const auto central = central_moments_jet(params, o.x, o.max_p);
    if (o.format == "json") {
        json rows = json::array();
        for (int p = 0; p <= o.max_p; ++p) {
            const auto i = static_cast<std::size_t>(p);
            rows.push_back({{"p", p},
                            {"raw_moment", raw[i]},
                            {"central_moment", central[i]},
                            {"central_symbolic", central_moment_symbolic(p).evaluate(params, o.x)}});
        }
        return json{{"moments", rows}}.dump(2) + "\n";
    }
    std::string s = "p,raw_moment,central_moment,central_symbolic\n";
    for (int p = 0; p <= o.max_p; ++p) {
        const auto i = static_cast<std::size_t>(p);
        s += std::to_string(p) + "," + format_number(raw[i]) + "," + format_number(central[i]) +
             "," + format_number(central_moment_symbolic(p).evaluate(params, o.x)) + "\n";
    }
    return s;
}

std::string run_kernel(const Options& o) {
    const OperatorParams params(o.lambda, require_numeric_a(o.a_text));
    const KernelPoint pt{o.x, o.nu};
    const double lk = log_kernel(params, pt);
    const auto [center, scale] = kernel_location_scale(params, o.x);
    return render_record(o, {"log_kernel", "kernel", "log_kernel_dx", "center", "scale"},
                         {lk, std::exp(lk), log_kernel_dx(params, pt), center, scale}, false);
}

std::string run_voronovskaja(const Options& o) {
    const OperatorParams params(o.lambda, require_numeric_a(o.a_text));
    const double r = voronovskaja_residual(params, function_from(o), o.x, quad_from(o));
    return render_record(o, {"residual"}, {r}, true);
}

std::string run_simultaneous(const Options& o) {
    const OperatorParams params(o.lambda, require_numeric_a(o.a_text));
    const auto [lhs, rhs] = simultaneous_check(params, function_from(o), o.x, o.p, quad_from(o));
    return render_record(o, {"lhs", "rhs"}, {lhs, rhs}, false);
}

std::string run_tails(const Options& o) {
    const OperatorParams params(o.lambda, require_numeric_a(o.a_text));
    const double t = tail_mass(params, o.x, o.delta, o.growth, quad_from(o));
    return render_record(o, {"tail_mass"}, {t}, true);
}

std::string run_converge(const Options& o) {
    std::ifstream in(o.config);
    if (!in) {
        throw UsageError("--config", "cannot open '" + o.config + "'");
    }
    ExperimentSpec spec;
    try {
        spec = experiment_spec_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw UsageError("--config", e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError("--config", e.what());
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw UsageError("--config", e.what());
    }
    const ConvergenceReport report = run_convergence_experiment(spec);
    if (o.format == "json") {
        return to_json(report).dump(2) + "\n";
    }
    return to_csv(report);
}

json a_to_json(const AParameter& a) {
    return a.post_widder ? json("PW") : json(a.value);
}

AParameter a_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "PW") {
            throw std::invalid_argument("a values must be numbers or \"PW\"");
        }
        return AParameter::pw();
    }
    if (!j.is_number()) {
        throw std::invalid_argument("a values must be numbers or \"PW\"");
    }
    return AParameter::of(j.get<double>());
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

std::string optional_csv(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("NA");
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const ConvergenceReport& report) {
    std::string s = "function,a,lambda,x,op_value,f_value,abs_error\n";
    for (const auto& r : report.rows) {
        s += r.function + "," + r.a.label() + "," + format_number(r.lambda) + "," +
             format_number(r.x) + "," + optional_csv(r.op_value) + "," + format_number(r.f_value) +
             "," + optional_csv(r.abs_error) + "\n";
    }
    s += "\nfunction,a,lambda,sup_error\n";
    for (const auto& r : report.summary) {
        s += r.function + "," + r.a.label() + "," + format_number(r.lambda) + "," +
             optional_csv(r.sup_error) + "\n";
    }
    return s;
}

json to_json(const ConvergenceReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"function", r.function},
                        {"a", a_to_json(r.a)},
                        {"lambda", r.lambda},
                        {"x", r.x},
                        {"op_value", optional_to_json(r.op_value)},
                        {"f_value", r.f_value},
                        {"abs_error", optional_to_json(r.abs_error)},
                        {"status", r.status}});
    }
    json summary = json::array();
    for (const auto& r : report.summary) {
        summary.push_back({{"function", r.function},
                           {"a", a_to_json(r.a)},
                           {"lambda", r.lambda},
                           {"sup_error", optional_to_json(r.sup_error)}});
    }
    return {{"rows", rows}, {"summary", summary}};
}

ConvergenceReport report_from_json(const json& j) {
    ConvergenceReport report;
    for (const auto& r : j.at("rows")) {
        ReportRow row;
        row.function = r.at("function").get<std::string>();
        row.a = a_from_json(r.at("a"));
        row.lambda = r.at("lambda").get<double>();
        row.x = r.at("x").get<double>();
        row.op_value = optional_from_json(r.at("op_value"));
        row.f_value = r.at("f_value").get<double>();
        row.abs_error = optional_from_json(r.at("abs_error"));
        row.status = r.at("status").get<std::string>();
        report.rows.push_back(std::move(row));
    }
    for (const auto& r : j.at("summary")) {
        report.summary.push_back({r.at("function").get<std::string>(), a_from_json(r.at("a")),
                                  r.at("lambda").get<double>(),
                                  optional_from_json(r.at("sup_error"))});
    }
    return report;
}

ExperimentSpec experiment_spec_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("experiment config must be a JSON object");
    }
    ExperimentSpec spec;
    spec.function = j.at("function").get<std::string>();
    for (const auto& a : j.at("a_ladder")) {
        spec.a_ladder.push_back(a_from_json(a));
    }
    for (const auto& l : j.at("lambda_ladder")) {
        spec.lambda_ladder.push_back(l.get<double>());
    }
    const auto& grid = j.at("x_grid");
    spec.x_grid = {grid.at("lo").get<double>(), grid.at("hi").get<double>(),
                   grid.at("count").get<int>()};
    if (j.contains("rel_tol")) {
        spec.quad.rel_tol = j.at("rel_tol").get<double>();
    }
    return spec;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        f << content;
        f.flush();
        if (!f) {
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponential-type operators associated with a^2 + x^2", "expop"};
    app.require_subcommand(1);
    Options o;

    const auto add_common = [&o](CLI::App* sub, bool needs_a) {
        sub->add_option("--lambda", o.lambda, "approximation order lambda > 0")
            ->required()
            ->check(CLI::PositiveNumber);
        auto* a_opt = sub->add_option("--a", o.a_text, "family parameter a > 0");
        if (needs_a) {
            a_opt->required();
        }
        sub->add_option("--x", o.x, "evaluation point")->required();
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "write output to this file instead of stdout");
    };
    const auto add_quad = [&o](CLI::App* sub) {
        sub->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")
            ->check(CLI::PositiveNumber);
    };
    const auto add_fn = [&o](CLI::App* sub) {
        sub->add_option("--fn", o.fn, "built-in function")
            ->required()
            ->check(CLI::IsMember(function_names()));
        sub->add_option("--theta", o.theta, "exponent for --fn exp");
    };

    auto* apply = app.add_subcommand("apply", "evaluate (T f)(x), its x-derivative, or (P f)(x) with --a PW");
    add_common(apply, true);
    add_fn(apply);
    add_quad(apply);
    apply->add_option("--p", o.p, "x-derivative order")->check(CLI::Range(0, kMaxDerivativeOrder));

    auto* moments = app.add_subcommand("moments", "raw and central moment table");
    add_common(moments, true);
    moments->add_option("--max-p", o.max_p, "highest moment order")->check(CLI::Range(0, kMaxMomentOrder));

    auto* kernel = app.add_subcommand("kernel", "kernel value, log-derivative and location/scale");
    add_common(kernel, true);
    kernel->add_option("--nu", o.nu, "integration variable")->required();

    auto* voron = app.add_subcommand("voronovskaja", "lambda[(Tf)(x) - f(x)] - (a^2+x^2)/2 f''(x)");
    add_common(voron, true);
    add_fn(voron);
    add_quad(voron);

    auto* simul = app.add_subcommand("simultaneous", "lhs and limit of lambda[(T^(p) f)(x) - f^(p)(x)]");
    add_common(simul, true);
    add_fn(simul);
    add_quad(simul);
    simul->add_option("--p", o.p, "derivative order")->required()->check(CLI::Range(0, kMaxDerivativeOrder));

    auto* tails = app.add_subcommand("tails", "kernel mass outside |nu - x| < delta weighted by exp(N|nu|)");
    add_common(tails, true);
    add_quad(tails);
    tails->add_option("--delta", o.delta, "half-width of the excluded interval")->required()->check(CLI::NonNegativeNumber);
    tails->add_option("--N", o.growth, "exponential weight rate")->check(CLI::NonNegativeNumber);

    auto* converge = app.add_subcommand("converge", "run a convergence experiment from a JSON config");
    converge->add_option("--config", o.config, "experiment JSON file")->required();
    converge->add_option("--out", o.out, "write output to this file instead of stdout");
    converge->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        std::string content;
        if (*apply) {
            content = run_apply(o);
        } else if (*moments) {
            content = run_moments(o);
        } else if (*kernel) {
            content = run_kernel(o);
        } else if (*voron) {
            content = run_voronovskaja(o);
        } else if (*simul) {
            content = run_simultaneous(o);
        } else if (*tails) {
            content = run_tails(o);
        } else {
            content = run_converge(o);
        }
        emit(o, content, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what();
        if (!*converge) {
            err << " [" << cell_text(o) << "]";
        }
        err << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace expop::cli
