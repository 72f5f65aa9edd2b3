// Command line front end for the majorization toolkit. Every subcommand
// reads JSON files, runs one library operation and writes a single JSON
// object, to stdout or to --out. Exit status: 0 when the queried relation
// holds (or for pure transforms), 1 when it fails and a certificate or
// report says so, 2 for unreadable or invalid input. Output is written only
// after the whole result has been computed, so a nonzero exit never leaves a
// partial file behind.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "majkit/majkit.hpp"

namespace {

struct CommonFlags {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    bool exact = false;
    std::string out;
    std::size_t sweep = 0;
};

void add_common(CLI::App* sub, CommonFlags* flags, bool with_sweep = false) {
    sub->add_option("--tolerance", flags->tolerance,
                    "base for scale-aware comparisons")
        ->capture_default_str();
    sub->add_option("--seed", flags->seed, "seed for randomized sweeps")
        ->capture_default_str();
    sub->add_flag("--exact", flags->exact, "decide LPs in exact rational arithmetic");
    sub->add_option("--out", flags->out, "write the JSON result to this file");
    if (with_sweep) {
        sub->add_option("--sweep", flags->sweep,
                        "additionally sweep this many random sublinear functionals");
    }
}

majkit::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return majkit::json::parse(buf.str());
}

void emit(const CommonFlags& flags, const std::string& payload) {
    if (flags.out.empty()) {
        std::fputs(payload.c_str(), stdout);
        std::fputc('\n', stdout);
        return;
    }
    std::ofstream out(flags.out, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open output file: " + flags.out);
    out << payload << '\n';
}

majkit::MajorizeOptions majorize_options(const CommonFlags& flags) {
    majkit::MajorizeOptions opts;
    opts.exact = flags.exact;
    opts.eps_base = flags.tolerance;
    return opts;
}

// Appends a sweep margin to a serialized verdict object when requested. The
// stored certificate (if any) is replayed as part of the sweep; multivariate
// certificates act on rows lifted by a trailing 1, so that sweep runs on the
// lifted pair.
std::string verdict_payload(const majkit::MajorizationVerdict& verdict,
                            const majkit::VectorStepFunction& f,
                            const majkit::VectorStepFunction& g, bool lifted,
                            const CommonFlags& flags) {
    std::string payload = majkit::dump_verdict(verdict);
    if (flags.sweep == 0) return payload;
    std::vector<majkit::SublinearFunctional> extras;
    if (verdict.certificate) extras.push_back(*verdict.certificate);
    double margin =
        lifted ? majkit::sublinear_sweep(majkit::lift_constant(f),
                                         majkit::lift_constant(g), flags.sweep,
                                         flags.seed, extras)
               : majkit::sublinear_sweep(f, g, flags.sweep, flags.seed, extras);
    payload.pop_back();  // reopen the object
    payload += ",\"sweep_margin\":" + majkit::fmt_double(margin) + "}";
    return payload;
}

int run(int argc, char** argv) {
    CLI::App app{"decide majorization relations between step functions on "
                 "finite atomic measure spaces"};
    app.require_subcommand(1);
    CommonFlags flags;

    std::string path_a, path_b, path_c, path_d;
    std::vector<std::string> basis_paths;
    std::size_t depth = 5;

    auto* check_vector = app.add_subcommand(
        "check-vector", "vector majorization of two equal-length vectors");
    check_vector->add_option("x.json", path_a, "function JSON, scalar, unit weights")
        ->required();
    check_vector->add_option("y.json", path_b, "function JSON, scalar, unit weights")
        ->required();
    add_common(check_vector, &flags, true);

    auto* check_matrix = app.add_subcommand(
        "check-matrix", "is f = K g for some stochastic kernel K");
    check_matrix->add_option("f.json", path_a, "function JSON")->required();
    check_matrix->add_option("g.json", path_b, "function JSON")->required();
    add_common(check_matrix, &flags, true);

    auto* check_multi = app.add_subcommand(
        "check-multivariate", "is f = K g for some doubly stochastic kernel K");
    check_multi->add_option("f.json", path_a, "function JSON")->required();
    check_multi->add_option("g.json", path_b, "function JSON")->required();
    add_common(check_multi, &flags, true);

    auto* witness = app.add_subcommand(
        "witness-hlp", "doubly stochastic matrix carrying y to x");
    witness->add_option("x.json", path_a, "function JSON, scalar, unit weights")->required();
    witness->add_option("y.json", path_b, "function JSON, scalar, unit weights")->required();
    add_common(witness, &flags);

    auto* rearrange = app.add_subcommand(
        "rearrange", "decreasing rearrangement of a scalar function");
    rearrange->add_option("f.json", path_a, "function JSON, scalar")->required();
    add_common(rearrange, &flags);

    auto* divergence = app.add_subcommand(
        "divergence", "weighted divergence: integral of h phi(f/h)");
    divergence->add_option("f.json", path_a, "function JSON")->required();
    divergence->add_option("h.json", path_b, "positive scalar function JSON")->required();
    divergence->add_option("phi.json", path_c, "convex functional JSON")->required();
    add_common(divergence, &flags);

    auto* perspective = app.add_subcommand(
        "perspective", "perspective transform of a max-affine convex functional");
    perspective->add_option("phi.json", path_a, "convex functional JSON")->required();
    add_common(perspective, &flags);

    auto* approx = app.add_subcommand(
        "approx-demo", "partition-averaging approximation errors by level");
    approx->add_option("basis.json", basis_paths, "one or more function JSONs")->required();
    approx->add_option("--kernel", path_a,
                       "kernel JSON (defaults to the identity on the basis space)");
    approx->add_option("--depth", depth, "finest resolution level")
        ->capture_default_str();
    add_common(approx, &flags);

    auto* scalar_equiv = app.add_subcommand(
        "scalar-equiv", "three-way scalar equivalence report for (f, h) vs (g, k)");
    scalar_equiv->add_option("f.json", path_a, "function JSON, scalar")->required();
    scalar_equiv->add_option("h.json", path_b, "positive scalar function JSON")->required();
    scalar_equiv->add_option("g.json", path_c, "function JSON, scalar")->required();
    scalar_equiv->add_option("k.json", path_d, "positive scalar function JSON")->required();
    add_common(scalar_equiv, &flags);

    CLI11_PARSE(app, argc, argv);

    if (check_vector->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto g = majkit::parse_function(load_json(path_b));
        for (const auto& fn : {f, g}) {
            majkit::require(fn.dimension() == 1, "check-vector needs scalar functions");
            for (double w : fn.space().weights()) {
                majkit::require(w == 1.0, "check-vector needs unit weights");
            }
        }
        auto verdict = majkit::multivariate_majorize(f, g, majorize_options(flags));
        if (verdict.holds) {
            // Prefer the constructive two-coordinate-averaging witness; fall
            // back to the LP one on tolerance edge cases.
            try {
                verdict.witness = majkit::hlp_witness(f.scalar_values(),
                                                      g.scalar_values(), flags.tolerance);
                verdict.witness_doubly = true;
            } catch (const std::invalid_argument&) {
            }
        }
        emit(flags, verdict_payload(verdict, f, g, true, flags));
        return verdict.holds ? 0 : 1;
    }
    if (check_matrix->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto g = majkit::parse_function(load_json(path_b));
        auto verdict = majkit::matrix_majorize(f, g, majorize_options(flags));
        emit(flags, verdict_payload(verdict, f, g, false, flags));
        return verdict.holds ? 0 : 1;
    }
    if (check_multi->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto g = majkit::parse_function(load_json(path_b));
        auto verdict = majkit::multivariate_majorize(f, g, majorize_options(flags));
        emit(flags, verdict_payload(verdict, f, g, true, flags));
        return verdict.holds ? 0 : 1;
    }
    if (witness->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto g = majkit::parse_function(load_json(path_b));
        majkit::require(f.dimension() == 1 && g.dimension() == 1,
                        "witness-hlp needs scalar functions");
        auto kernel = majkit::hlp_witness(f.scalar_values(), g.scalar_values(),
                                          flags.tolerance);
        emit(flags, majkit::dump_kernel(kernel));
        return 0;
    }
    if (rearrange->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        emit(flags, majkit::dump_rearranged(majkit::decreasing_rearrangement(f)));
        return 0;
    }
    if (divergence->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto h = majkit::parse_function(load_json(path_b));
        auto phi = majkit::parse_convex(load_json(path_c));
        double value = majkit::phi_divergence(phi, f, h);
        emit(flags, "{\"value\":" + majkit::fmt_double(value) + "}");
        return 0;
    }
    if (perspective->parsed()) {
        auto phi = majkit::parse_convex(load_json(path_a));
        emit(flags, majkit::dump_sublinear(majkit::perspective(phi)));
        return 0;
    }
    if (approx->parsed()) {
        std::vector<majkit::VectorStepFunction> basis;
        for (const auto& path : basis_paths) {
            basis.push_back(majkit::parse_function(load_json(path)));
        }
        auto kernel = path_a.empty()
                          ? majkit::StochasticKernel(majkit::identity_kernel(
                                basis.front().space()))
                          : majkit::parse_kernel(load_json(path_a));
        auto rows = majkit::approximate_operator(kernel, basis, depth);
        emit(flags, majkit::dump_approximation(rows));
        return 0;
    }
    if (scalar_equiv->parsed()) {
        auto f = majkit::parse_function(load_json(path_a));
        auto h = majkit::parse_function(load_json(path_b));
        auto g = majkit::parse_function(load_json(path_c));
        auto k = majkit::parse_function(load_json(path_d));
        auto report =
            majkit::scalar_equivalence_report(f, h, g, k, majorize_options(flags));
        emit(flags, majkit::dump_scalar_report(report));
        bool holds = report.matrix_feasible && report.hinge_inequalities &&
                     report.multivariate_feasible;
        return holds ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const majkit::json::exception& e) {
        std::fprintf(stderr, "error: invalid JSON: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
