#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hdecay/bargmann.hpp"
#include "hdecay/constants.hpp"
#include "hdecay/decay.hpp"
#include "hdecay/emit.hpp"
#include "hdecay/errors.hpp"
#include "hdecay/gaussians.hpp"
#include "hdecay/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitIo = 3;

// "" means stdout.
int emit_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return std::cout ? kExitOk : kExitIo;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitIo;
    }
    out << content;
    out.flush();
    if (!out) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

// extremal | gauss:<c> | hermite:<k>
hdecay::TestFunction parse_selector(const std::string& sel,
                                    const hdecay::GaussianEnvelopePair& pair) {
    if (sel == "extremal") return hdecay::extremal_function(pair);
    if (sel.rfind("gauss:", 0) == 0) {
        const std::string arg = sel.substr(6);
        std::size_t used = 0;
        double c = 0.0;
        try {
            c = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("selector 'gauss:' needs a numeric exponent, got '" +
                                        arg + "'");
        }
        if (used != arg.size() || !(c > 0.0))
            throw std::invalid_argument("selector 'gauss:' needs a positive exponent, got '" +
                                        arg + "'");
        return hdecay::ComplexGaussian{{c, 0.0}};
    }
    if (sel.rfind("hermite:", 0) == 0) {
        const std::string arg = sel.substr(8);
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("selector 'hermite:' needs an index, got '" + arg + "'");
        }
        if (used != arg.size() || k < 0 || k > 400)
            throw std::invalid_argument("selector 'hermite:' index must be in [0, 400], got '" +
                                        arg + "'");
        hdecay::CoefficientSequence seq;
        seq.kind = hdecay::SequenceKind::hermite_inner_product;
        seq.entries.resize(k + 1);
        for (int n = 0; n < k; ++n) seq.set_zero(n);
        seq.set(k, hdecay::LogComplex{0.0, 0.0});
        return hdecay::HermiteExpansion{std::move(seq)};
    }
    throw std::invalid_argument("unknown function selector '" + sel +
                                "' (expected extremal, gauss:<c>, or hermite:<k>)");
}

hdecay::CoefficientSequence selector_coefficients(const std::string& sel,
                                                  const hdecay::GaussianEnvelopePair& pair,
                                                  int n_max) {
    const hdecay::TestFunction f = parse_selector(sel, pair);
    if (const auto* g = std::get_if<hdecay::ComplexGaussian>(&f))
        return hdecay::closed_form_coefficients(*g, n_max);
    // hermite:<k> — the expansion's own entries, padded/truncated to n_max.
    const auto& src = std::get<hdecay::HermiteExpansion>(f).coeffs;
    hdecay::CoefficientSequence seq;
    seq.kind = hdecay::SequenceKind::hermite_inner_product;
    seq.entries.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        if (static_cast<std::size_t>(n) < src.entries.size() && !src.is_zero(n))
            seq.set(n, src.log_value(n));
        else
            seq.set_zero(n);
    }
    return seq;
}

std::vector<double> membership_grid(double envelope_exponent) {
    const double limit =
        std::ceil(12.0 / std::sqrt(std::min(envelope_exponent, 1.0))) + 0.5;
    std::vector<double> g;
    for (double x = -limit; x <= limit + 1e-9; x += 0.125) g.push_back(x);
    return g;
}

struct PairFlags {
    double a = 0.0;
    double b = 0.0;
};

void add_pair_flags(CLI::App* cmd, PairFlags& pf) {
    auto* oa = cmd->add_option("--a", pf.a, "time-side Gaussian exponent")->required();
    auto* ob = cmd->add_option("--b", pf.b, "transform-side Gaussian exponent")->required();
    oa->needs(ob);
    ob->needs(oa);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hdecay: sharp Hermite-coefficient decay for functions dominated by "
        "Gaussians on both sides of the Fourier transform"};
    app.require_subcommand(1);

    PairFlags const_pair;
    std::string const_output;
    auto* cmd_constants = app.add_subcommand(
        "constants", "decay rate, rotation angle, and sector boundaries as JSON");
    add_pair_flags(cmd_constants, const_pair);
    cmd_constants->add_option("-o,--output", const_output, "output path (default stdout)");

    PairFlags coeffs_pair;
    std::string coeffs_output, coeffs_fn = "extremal";
    int coeffs_n_max = 200;
    auto* cmd_coeffs = app.add_subcommand(
        "coeffs", "coefficient magnitudes, phases, and the decay envelope as CSV");
    add_pair_flags(cmd_coeffs, coeffs_pair);
    cmd_coeffs->add_option("--function", coeffs_fn,
                           "extremal | gauss:<c> | hermite:<k> (default extremal)");
    cmd_coeffs->add_option("--n-max", coeffs_n_max, "largest coefficient index (default 200)")
        ->check(CLI::Range(0, 400));
    cmd_coeffs->add_option("-o,--output", coeffs_output, "output path (default stdout)");

    std::string verify_suite;
    PairFlags verify_pair;
    bool verify_has_pair = false;
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("--suite", verify_suite, "lemma21 | symmetry | coeffs | bargmann | jnk | decay | all")
        ->required();
    auto* va = cmd_verify->add_option("--a", verify_pair.a, "restrict pair-dependent checks: time-side exponent");
    auto* vb = cmd_verify->add_option("--b", verify_pair.b, "restrict pair-dependent checks: transform-side exponent");
    va->needs(vb);
    vb->needs(va);

    std::string plot_input, plot_output;
    auto* cmd_plot = app.add_subcommand("plot", "render a CSV from this tool as a static SVG");
    cmd_plot->add_option("--input", plot_input, "CSV path produced by coeffs or bargmann-ray")
        ->required();
    cmd_plot->add_option("-o,--output", plot_output, "output path (default stdout)");

    PairFlags ray_pair;
    std::string ray_output, ray_fn = "extremal";
    double ray_theta = 0.0, ray_r_max = 0.0;
    int ray_samples = 40;
    auto* cmd_ray = app.add_subcommand(
        "bargmann-ray", "transform magnitude along one ray against its sector bound, as CSV");
    add_pair_flags(cmd_ray, ray_pair);
    cmd_ray->add_option("--theta", ray_theta, "ray angle in radians")->required();
    cmd_ray->add_option("--function", ray_fn, "extremal | gauss:<c> | hermite:<k>");
    cmd_ray->add_option("--r-max", ray_r_max,
                        "largest radius (default sqrt(120/A), i.e. r^2 A/4 = 30)");
    cmd_ray->add_option("--samples", ray_samples, "radial sample count (default 40)")
        ->check(CLI::Range(1, 100000));
    cmd_ray->add_option("-o,--output", ray_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }
    verify_has_pair = va->count() > 0;

    const auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        if (cmd_constants->parsed()) {
            const hdecay::DecayConstants dc =
                hdecay::solve_lemma21({const_pair.a, const_pair.b, 1.0});
            code = emit_output(const_output,
                               hdecay::constants_json(dc, hdecay::identity_residuals(dc)));
        } else if (cmd_coeffs->parsed()) {
            const hdecay::GaussianEnvelopePair pair{coeffs_pair.a, coeffs_pair.b, 1.0};
            const hdecay::DecayConstants dc = hdecay::solve_lemma21(pair);
            const hdecay::CoefficientSequence seq =
                selector_coefficients(coeffs_fn, pair, coeffs_n_max);
            code = emit_output(coeffs_output, hdecay::coeffs_csv(seq, dc));
        } else if (cmd_verify->parsed()) {
            std::optional<hdecay::GaussianEnvelopePair> override_pair;
            if (verify_has_pair)
                override_pair = hdecay::GaussianEnvelopePair{verify_pair.a, verify_pair.b, 1.0};
            if (override_pair) hdecay::solve_lemma21(*override_pair);  // validate up front
            const hdecay::SuiteResult result = hdecay::run_suite(verify_suite, override_pair);
            std::cout << hdecay::format_report(result);
            std::fprintf(stderr, "suite %s: %.3f s\n", result.suite.c_str(), result.seconds);
            code = result.passed ? kExitOk : kExitVerifyFail;
        } else if (cmd_plot->parsed()) {
            std::ifstream in(plot_input, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read '" << plot_input << "'\n";
                return kExitIo;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string svg;
            try {
                svg = hdecay::svg_from_csv(buf.str());
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitIo;
            }
            code = emit_output(plot_output, svg);
        } else if (cmd_ray->parsed()) {
            const hdecay::GaussianEnvelopePair pair{ray_pair.a, ray_pair.b, 1.0};
            const hdecay::DecayConstants dc = hdecay::solve_lemma21(pair);
            const hdecay::TestFunction f = parse_selector(ray_fn, pair);
            const hdecay::MembershipReport mem = hdecay::check_membership(
                f, pair, membership_grid(pair.a), membership_grid(pair.b));
            const double r_max = ray_r_max > 0.0 ? ray_r_max : std::sqrt(120.0 / dc.A);
            const hdecay::RayBoundReport rep =
                hdecay::ray_bound_check(f, mem, ray_theta, r_max, ray_samples);
            code = emit_output(ray_output, hdecay::ray_csv(rep));
        }
    } catch (const hdecay::AccuracyRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "%s: %.3f s\n", app.get_subcommands().front()->get_name().c_str(),
                 elapsed);
    return code;
}
