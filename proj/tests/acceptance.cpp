// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "expop/analysis.hpp"
#include "expop/cli.hpp"
#include "expop/errors.hpp"
#include "expop/kernel.hpp"
#include "expop/moments.hpp"
#include "expop/operators.hpp"

using namespace expop;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

GrowthBoundedFunction centered_power(int p, double x) {
    GrowthBoundedFunction g;
    g.degree = p;
    g.K = std::pow(1 + std::abs(x), p);
    g.eval = [p, x](double nu) { return std::pow(nu - x, p); };
    return g;
}

Outcome moment_anchors() {
    Outcome o;
    const OperatorParams params(10, 1);
    const double x = 1;
    const auto jet = central_moments_jet(params, x, 6);
    const auto raw = raw_moments_jet(params, x, 3);
    double jet_sym = 0;
    double quad = 0;
    double anchor = 0;
    const std::vector<std::pair<int, double>> mu{{2, 0.2}, {3, 0.04}, {4, 0.136}, {6, 0.18912}};
    for (const auto& [p, want] : mu) {
        const double j = jet[static_cast<std::size_t>(p)];
        const double s = central_moment_symbolic(p).evaluate(params, x);
        const double q = apply_T(params, centered_power(p, x), x);
        jet_sym = std::max(jet_sym, std::abs(j - s));
        quad = std::max(quad, std::abs(q - s));
        anchor = std::max({anchor, std::abs(j - want), std::abs(s - want)});
    }
    const std::vector<std::pair<int, double>> m{{2, 1.2}, {3, 1.64}};
    for (const auto& [p, want] : m) {
        const double j = raw[static_cast<std::size_t>(p)];
        const double q = apply_T(params, monomial(p).f, x);
        anchor = std::max(anchor, std::abs(j - want));
        quad = std::max(quad, std::abs(q - want));
    }
    o.pass = jet_sym <= 1e-10 && anchor <= 1e-10 && quad <= 1e-7;
    o.detail = "jet-symbolic " + fmt("%.2e", jet_sym) + ", anchors " + fmt("%.2e", anchor) + ", quadrature " +
               fmt("%.2e", quad);
    return o;
}

Outcome normalization() {
    double worst0 = 0;
    double worst1 = 0;
    for (double l : {1.0, 2.0, 5.0, 10.0, 100.0}) {
        for (double a : {0.1, 1.0, 5.0, 100.0}) {
            for (double x : {-3.0, 0.0, 0.5, 2.0}) {
                const OperatorParams p(l, a);
                worst0 = std::max(worst0, std::abs(apply_T(p, monomial(0).f, x) - 1));
                worst1 = std::max(worst1, std::abs(apply_T(p, monomial(1).f, x) - x));
            }
        }
    }
    return {worst0 <= 1e-8 && worst1 <= 1e-8,
            "80 cells, max |mass-1| " + fmt("%.2e", worst0) + ", max |T e1 - x| " + fmt("%.2e", worst1)};
}

Outcome mgf_agreement() {
    struct Tuple {
        double l, a, x, theta;
    };
    std::vector<Tuple> tuples{{1, 1, 0, pi / 4}};
    for (double l : {2.0, 10.0}) {
        for (double a : {0.5, 1.0, 3.0}) {
            for (double x : {-1.0, 0.0, 1.5}) {
                const double rate = (l / a) * (pi / 2 - std::abs(std::atan(x / a)));
                tuples.push_back({l, a, x, (x > 0 ? -0.5 : 0.5) * rate});
            }
        }
    }
    tuples.push_back({50, 2, 4, 10});
    Outcome o;
    double worst = 0;
    int admissible_count = 0;
    for (const auto& t : tuples) {
        const OperatorParams p(t.l, t.a);
        const auto f = exp_theta(t.theta);
        if (!admissible(p, f.f, t.x)) {
            o.pass = false;
            continue;
        }
        ++admissible_count;
        const double want = mgf_closed_form(p, t.x, t.theta);
        worst = std::max(worst, std::abs(apply_T(p, f.f, t.x) - want) / want);
    }
    const double sec = mgf_closed_form({1, 1}, 0, pi / 4);
    o.pass = o.pass && admissible_count == 20 && worst <= 1e-6 && std::abs(sec - std::sqrt(2.0)) < 1e-14;
    o.detail = std::to_string(admissible_count) + " tuples, max rel diff " + fmt("%.2e", worst) +
               ", (1,1,0,pi/4) -> " + fmt("%.15g", sec);
    return o;
}

Outcome voronovskaja() {
    double e2 = 0;
    for (double l : {2.0, 10.0, 100.0, 1000.0}) {
        for (double a : {0.5, 1.0, 5.0}) {
            for (double x : {-2.0, 0.0, 1.0}) {
                e2 = std::max(e2, std::abs(voronovskaja_residual({l, a}, monomial(2), x)));
            }
        }
    }
    const std::vector<double> lambdas{1e2, 1e3, 1e4};
    bool ok = e2 <= 1e-6;
    std::string detail = "e2 max residual " + fmt("%.2e", e2);
    for (const auto& f : {monomial(3), monomial(4), gauss()}) {
        std::vector<double> ys;
        for (double l : lambdas) {
            ys.push_back(voronovskaja_residual({l, 1}, f, 1));
        }
        const double s = loglog_slope(lambdas, ys);
        ok = ok && std::abs(s + 1) <= 0.1;
        detail += ", slope " + f.f.label + " " + fmt("%.4f", s);
    }
    return {ok, detail};
}

Outcome simultaneous() {
    bool ok = true;
    std::string detail;
    for (int p : {1, 2}) {
        for (double x : {0.5, 1.0}) {
            double prev = INFINITY;
            for (double l : {50.0, 100.0, 200.0, 400.0}) {
                const auto c = simultaneous_check({l, 1}, gauss(), x, p);
                const double gap = std::abs(c.lhs - c.rhs);
                ok = ok && gap < prev;
                prev = gap;
            }
            detail += "gauss p=" + std::to_string(p) + " x=" + fmt("%g", x) + " gap(400) " + fmt("%.2e", prev) + "; ";
        }
    }
    double exact = 0;
    for (int p : {1, 2}) {
        for (const auto& f : {monomial(1), monomial(2)}) {
            for (double l : {10.0, 100.0}) {
                for (double x : {-1.0, 1.0}) {
                    const auto c = simultaneous_check({l, 1}, f, x, p);
                    exact = std::max(exact, std::abs(c.lhs - c.rhs));
                }
            }
        }
    }
    ok = ok && exact <= 1e-6;
    return {ok, detail + "e1/e2 max |lhs-rhs| " + fmt("%.2e", exact)};
}

Outcome post_widder_limit() {
    bool ok = true;
    double worst_ratio = 0;
    for (const auto& f : {monomial(2), x_sin_x()}) {
        for (double x : {0.5, 1.0, 2.0}) {
            const double pw = apply_post_widder(50, f.f, x);
            double prev = INFINITY;
            for (double a : {1e-1, 1e-2, 1e-3}) {
                const double gap = std::abs(apply_T({50, a}, f.f, x) - pw);
                ok = ok && gap < prev;
                prev = gap;
            }
            const double limit = 1e-3 * (1 + std::abs(f.f(x)));
            ok = ok && prev < limit;
            worst_ratio = std::max(worst_ratio, prev / limit);
        }
    }
    return {ok, "monotone in a; max final gap / allowance " + fmt("%.2e", worst_ratio)};
}

Outcome scaling_limit() {
    double worst = 0;
    for (double l : {10.0, 100.0}) {
        worst = std::max(worst, std::abs(scaling_limit_residual(2, 1, monomial(2).f, 1, l) - 1 / (2 * l * l)));
    }
    return {worst <= 1e-9, "max |residual - a^2/(m lambda^2)| " + fmt("%.2e", worst)};
}

Outcome tails() {
    std::vector<double> t;
    for (double l : {20.0, 40.0, 80.0, 160.0}) {
        t.push_back(tail_mass({l, 1}, 1, 1, 0.5));
    }
    bool ok = t[0] / t[3] > 1e3;
    std::string detail = "lambda 20->160 factor " + fmt("%.3e", t[0] / t[3]) + ", per-doubling";
    double prev = INFINITY;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double r = t[i] / t[i - 1];
        ok = ok && r < 1 && r < prev;
        prev = r;
        detail += " " + fmt("%.3e", r);
    }
    return {ok, detail};
}

Outcome usual_modulus() {
    // certify M3 = 4 for gauss on a fine grid
    double m3 = 0;
    for (int i = -40000; i <= 40000; ++i) {
        const double v = i * 1e-4;
        m3 = std::max(m3, std::abs((12 * v - 8 * v * v * v) * std::exp(-v * v)));
    }
    bool ok = m3 <= 4;
    int cells = 0;
    for (double l : {5.0, 50.0, 500.0}) {
        for (double a : {0.5, 1.0, 3.0}) {
            for (double x : {-2.0, 0.0, 1.0}) {
                ok = ok && usual_modulus_bound_check({l, a}, gauss(), 4, x).ok;
                ok = ok && usual_modulus_bound_check({l, a}, monomial(2), 0, x).ok;
                cells += 2;
            }
        }
    }
    return {ok, std::to_string(cells) + " cells, sup|gauss'''| " + fmt("%.4f", m3)};
}

ConvergenceReport run_config(const fs::path& path) {
    std::ifstream in(path);
    const auto spec = cli::experiment_spec_from_json(nlohmann::json::parse(in));
    return run_convergence_experiment(spec);
}

Outcome reproduction(const fs::path& config_dir) {
    bool ok = true;
    std::string detail;
    const std::vector<AParameter> ladder{AParameter::of(100), AParameter::of(10), AParameter::of(5),
                                         AParameter::of(1), AParameter::pw()};
    for (const char* name : {"xsinx", "xcospix"}) {
        const auto report = run_config(config_dir / (std::string(name) + ".json"));
        for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
            const auto e10 = report.sup_error(ladder[i], 10);
            const auto e100 = report.sup_error(ladder[i], 100);
            const bool step = e10 && e100 && *e100 < *e10;
            if (step && *e10 - *e100 < 1e-10 * *e10) {
                detail += std::string(name) + " a=" + ladder[i].label() + " lambda step margin " +
                          fmt("%.1e", *e10 - *e100) + " (roundoff level); ";
            }
            if (!step) {
                detail += std::string(name) + " a=" + ladder[i].label() + ": sup(100) " +
                          fmt("%.17g", e100.value_or(NAN)) + " vs sup(10) " + fmt("%.17g", e10.value_or(NAN)) +
                          "; ";
            }
            ok = ok && step;
        }
        std::string chain;
        for (std::size_t i = 0; i < ladder.size(); ++i) {
            const auto e = report.sup_error(ladder[i], 100);
            chain += (i ? " > " : "") + fmt("%.4g", e.value_or(NAN));
            if (i > 0) {
                const auto before = report.sup_error(ladder[i - 1], 100);
                ok = ok && e && before && *e < *before;
            }
        }
        detail += std::string(name) + " lambda=100 sup-errors " + chain + "; ";
    }
    return {ok, detail};
}

Outcome determinism(const fs::path& config_dir) {
    const fs::path dir = fs::temp_directory_path() / "expop_acceptance";
    fs::create_directories(dir);
    std::string first;
    bool ok = true;
    for (const char* name : {"xsinx", "xcospix"}) {
        const fs::path cfg = config_dir / (std::string(name) + ".json");
        std::string outputs[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path out = dir / (std::string(name) + std::to_string(k) + ".csv");
            std::ostringstream so;
            std::ostringstream se;
            const std::vector<std::string> args{"converge", "--config", cfg.string(), "--out", out.string()};
            ok = ok && cli::run_cli(args, so, se) == 0;
            std::ifstream in(out, std::ios::binary);
            outputs[k].assign(std::istreambuf_iterator<char>(in), {});
        }
        ok = ok && !outputs[0].empty() && outputs[0] == outputs[1];
        if (first.empty()) {
            first = std::to_string(outputs[0].size());
        }
    }
    return {ok, "byte-identical CSV from two converge runs per config (" + first + " bytes for xsinx)"};
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path config_dir = argc > 1 ? fs::path(argv[1]) : fs::path("configs");
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "moment anchors", moment_anchors},
        {2, "normalization and linear preservation", normalization},
        {3, "MGF agreement", mgf_agreement},
        {4, "Voronovskaja residuals", voronovskaja},
        {5, "simultaneous approximation", simultaneous},
        {6, "Post-Widder limit in a", post_widder_limit},
        {7, "scaling limit", scaling_limit},
        {8, "tail decay", tails},
        {9, "usual-modulus bound", usual_modulus},
        {10, "convergence experiments", [&] { return reproduction(config_dir); }},
        {11, "determinism", [&] { return determinism(config_dir); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
