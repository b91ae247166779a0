// Command-line front end: noise synthesis, denoising, quality metrics.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hlo/errors.hpp"
#include "hlo/half_kernel.hpp"
#include "hlo/laplacian.hpp"
#include "hlo/mesh_io.hpp"
#include "hlo/metrics.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

enum class Method { hlo, uniform, cotangent };

struct NoiseArgs {
    std::string input, output;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    hlo::NoiseDirection direction = hlo::NoiseDirection::isotropic;
};

struct DenoiseArgs {
    std::string input, output, trace_path;
    Method method = Method::hlo;
    int iterations = 0;
    double step = 1.0;
    bool no_fix_boundaries = false;
    hlo::EnergyMode energy_mode = hlo::EnergyMode::literal;
    hlo::TieBreak tie_break = hlo::TieBreak::lowest_index;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct MetricsArgs {
    std::string denoised, ground_truth, report_path, signed_field_path;
    double runtime = 0.0;
};

// Input meshes are preconditions: any failure to read them exits 2.
hlo::TriMesh load_input(const std::string& path) {
    try {
        return hlo::read_mesh(path);
    } catch (const hlo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::exit(kExitUsage);
    }
}

std::string format_num(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

int run_add_noise(const NoiseArgs& args) {
    const hlo::TriMesh mesh = load_input(args.input);
    const double le = hlo::mean_edge_length(mesh);
    const hlo::TriMesh noisy = hlo::add_noise(mesh, {args.sigma, args.seed, args.direction});
    hlo::write_mesh(noisy, args.output);
    std::cout << "l_e = " << format_num(le) << '\n'
              << "sigma_n = " << format_num(args.sigma * le) << " (" << format_num(args.sigma)
              << " * l_e)\n"
              << "seed = " << args.seed << '\n'
              << "wrote " << args.output << '\n';
    return 0;
}

int run_denoise(const DenoiseArgs& args) {
    const hlo::TriMesh mesh = load_input(args.input);

    std::vector<hlo::IterationStats> trace;
    std::vector<std::vector<hlo::Vec3>> snapshots;  // for the trace, outside the timed region
    hlo::IterationCallback callback;
    if (!args.trace_path.empty()) {
        callback = [&](int, std::span<const hlo::Vec3> positions) {
            snapshots.emplace_back(positions.begin(), positions.end());
        };
    }

    hlo::TriMesh result;
    const auto t0 = std::chrono::steady_clock::now();
    if (args.method == Method::hlo) {
        hlo::HloConfig cfg;
        cfg.iterations = args.iterations;
        cfg.step = args.step;
        cfg.fix_boundaries = !args.no_fix_boundaries;
        cfg.energy_mode = args.energy_mode;
        cfg.tie_break = args.tie_break;
        cfg.rng_seed = args.seed;
        cfg.threads = args.threads;
        hlo::DenoiseResult r = hlo::denoise(mesh, cfg, callback);
        result = std::move(r.mesh);
        trace = std::move(r.trace);
    } else {
        hlo::FlowConfig cfg{args.step, args.iterations, !args.no_fix_boundaries};
        const auto kind =
            args.method == Method::uniform ? hlo::LaplacianKind::uniform : hlo::LaplacianKind::cotangent;
        hlo::SmoothResult r = hlo::smooth_iterations(mesh, kind, cfg, callback);
        result = std::move(r.mesh);
        trace = std::move(r.trace);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    hlo::write_mesh(result, args.output);

    if (!args.trace_path.empty()) {
        std::ofstream out(args.trace_path);
        if (!out) throw hlo::IoError("IoError: cannot open '" + args.trace_path + "'");
        out << "iteration,avg_displacement,total_delta_norm,mean_curvature_energy\n";
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const hlo::TriMesh snap = hlo::with_positions(mesh, snapshots[i]);
            out << trace[i].iteration << ',' << format_num(trace[i].avg_displacement) << ','
                << format_num(trace[i].total_delta_norm) << ','
                << format_num(hlo::mean_curvature_energy(snap)) << '\n';
        }
    }

    std::cout << "runtime = " << format_num(elapsed.count()) << " s (excluding file I/O)\n";
    try {
        std::cout << "enclosed volume = " << format_num(hlo::enclosed_volume(result)) << " (input "
                  << format_num(hlo::enclosed_volume(mesh)) << ")\n";
    } catch (const hlo::OpenMesh&) {
        // open meshes have no volume to report
    }
    std::cout << "wrote " << args.output << '\n';
    return 0;
}

int run_metrics(const MetricsArgs& args) {
    const hlo::TriMesh denoised = load_input(args.denoised);
    const hlo::TriMesh truth = load_input(args.ground_truth);

    const hlo::QualityReport report = hlo::evaluate_quality(denoised, truth, args.runtime);
    std::cout << report.pretty();

    if (!args.report_path.empty()) {
        std::ofstream out(args.report_path);
        if (!out) throw hlo::IoError("IoError: cannot open '" + args.report_path + "'");
        out << hlo::QualityReport::csv_header() << '\n' << report.csv_row() << '\n';
        std::cout << "wrote " << args.report_path << '\n';
    }
    if (!args.signed_field_path.empty()) {
        const hlo::VertexErrorResult err = hlo::avg_vertex_error(denoised, truth);
        hlo::ScalarField field{hlo::FieldTarget::vertex, err.signed_field, "signed_vertex_error"};
        hlo::write_scalar_field(field, denoised, args.signed_field_path);
        std::cout << "wrote " << args.signed_field_path << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-preserving surface smoothing with half-kernel Laplacians"};
    app.require_subcommand(1);

    const std::map<std::string, hlo::NoiseDirection> direction_names{
        {"isotropic", hlo::NoiseDirection::isotropic},
        {"along-normal", hlo::NoiseDirection::along_normal}};
    const std::map<std::string, Method> method_names{
        {"hlo", Method::hlo}, {"uniform", Method::uniform}, {"cotangent", Method::cotangent}};
    const std::map<std::string, hlo::EnergyMode> energy_names{
        {"literal", hlo::EnergyMode::literal},
        {"candidate-position", hlo::EnergyMode::candidate_position}};
    const std::map<std::string, hlo::TieBreak> tie_names{
        {"index", hlo::TieBreak::lowest_index}, {"random", hlo::TieBreak::seeded_random}};

    NoiseArgs noise;
    CLI::App* cmd_noise = app.add_subcommand("add-noise", "Add Gaussian noise to a mesh");
    cmd_noise->add_option("input", noise.input, "Input mesh (OBJ/OFF)")->required();
    cmd_noise->add_option("-o,--output", noise.output, "Output mesh path")->required();
    cmd_noise->add_option("--sigma", noise.sigma, "Noise std dev as a multiple of the mean edge length")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_noise->add_option("--seed", noise.seed, "RNG seed");
    cmd_noise->add_option("--direction", noise.direction, "Noise direction")
        ->transform(CLI::CheckedTransformer(direction_names))
        ->default_str("isotropic");

    DenoiseArgs den;
    CLI::App* cmd_den = app.add_subcommand("denoise", "Smooth a mesh");
    cmd_den->add_option("input", den.input, "Input mesh (OBJ/OFF)")->required();
    cmd_den->add_option("-o,--output", den.output, "Output mesh path")->required();
    cmd_den->add_option("--iterations", den.iterations, "Number of vertex-update iterations")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_den->add_option("--method", den.method, "Smoothing operator")
        ->transform(CLI::CheckedTransformer(method_names))
        ->default_str("hlo");
    cmd_den->add_option("--step", den.step, "Diffusion step (lambda*dt)")
        ->check(CLI::PositiveNumber)
        ->default_val(1.0);
    cmd_den->add_option("--energy-mode", den.energy_mode, "Candidate energy form")
        ->transform(CLI::CheckedTransformer(energy_names))
        ->default_str("literal");
    cmd_den->add_flag("--no-fix-boundaries", den.no_fix_boundaries,
                      "Let open-boundary vertices move");
    cmd_den->add_option("--tie-break", den.tie_break, "Pairing tie rule")
        ->transform(CLI::CheckedTransformer(tie_names))
        ->default_str("index");
    cmd_den->add_option("--seed", den.seed, "Seed for the random tie rule");
    cmd_den->add_option("--emit-trace", den.trace_path, "Write per-iteration diagnostics CSV");
    cmd_den->add_option("--threads", den.threads, "Worker threads for the per-vertex sweep")
        ->check(CLI::PositiveNumber)
        ->default_val(1);

    MetricsArgs met;
    CLI::App* cmd_met = app.add_subcommand("metrics", "Evaluate a denoised mesh");
    cmd_met->add_option("denoised", met.denoised, "Denoised mesh")->required();
    cmd_met->add_option("ground-truth", met.ground_truth, "Ground-truth mesh")->required();
    cmd_met->add_option("-o,--output", met.report_path, "Write the report as CSV");
    cmd_met->add_option("--signed-error-field", met.signed_field_path,
                        "Write the per-vertex signed error CSV");
    cmd_met->add_option("--runtime", met.runtime, "Runtime seconds to stamp into the report")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (cmd_noise->parsed()) return run_add_noise(noise);
        if (cmd_den->parsed()) return run_denoise(den);
        if (cmd_met->parsed()) return run_metrics(met);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hlo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
