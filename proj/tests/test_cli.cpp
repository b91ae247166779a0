#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hlo/mesh_io.hpp"
#include "hlo/metrics.hpp"
#include "hlo/shapes.hpp"

namespace fs = std::filesystem;
using namespace hlo;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class TempDir {
  public:
    TempDir() {
        dir_ = fs::temp_directory_path() /
               ("hlo_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path path(const std::string& name) const { return dir_ / name; }

  private:
    fs::path dir_;
    static inline int counter_ = 0;
};

CliResult run_cli(const TempDir& tmp, const std::string& args) {
    const fs::path out = tmp.path("stdout.txt");
    const fs::path err = tmp.path("stderr.txt");
    const std::string cmd = std::string(HLO_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.stdout_text = slurp(out);
    r.stderr_text = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("cli: add-noise with sigma 0 copies the geometry byte-for-byte") {
    TempDir tmp;
    const TriMesh sphere = shapes::icosphere(1);
    write_mesh(sphere, tmp.path("in.obj"));

    CliResult r = run_cli(tmp, "add-noise " + tmp.path("in.obj").string() + " --sigma 0 --seed 7 -o " +
                                   tmp.path("noisy.obj").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("sigma_n") != std::string::npos);
    CHECK(r.stdout_text.find("l_e") != std::string::npos);
    CHECK(r.stdout_text.find("seed") != std::string::npos);

    // The output equals a straight read->write copy of the input.
    std::ostringstream expected;
    write_mesh(read_mesh(tmp.path("in.obj")), expected, MeshFormat::obj);
    CHECK(slurp(tmp.path("noisy.obj")) == expected.str());
}

TEST_CASE("cli: missing input exits 2 with a single-line error") {
    TempDir tmp;
    CliResult r = run_cli(tmp, "add-noise /no/such/mesh.obj --sigma 0.5 -o " +
                                   tmp.path("x.obj").string());
    CHECK(r.exit_code == 2);
    CHECK(r.stderr_text.rfind("error:", 0) == 0);
    CHECK(r.stderr_text.find("IoError") != std::string::npos);
}

TEST_CASE("cli: denoise rejects iterations = 0 as a usage error") {
    TempDir tmp;
    write_mesh(shapes::icosphere(1), tmp.path("in.obj"));
    CliResult r = run_cli(tmp, "denoise " + tmp.path("in.obj").string() + " --iterations 0 -o " +
                                   tmp.path("out.obj").string());
    CHECK(r.exit_code == 2);
    CHECK(r.stderr_text.rfind("error:", 0) == 0);
}

TEST_CASE("cli: denoise prints runtime and volume, writes the mesh") {
    TempDir tmp;
    write_mesh(add_noise(shapes::icosphere(2), NoiseSpec{0.3, 9}), tmp.path("noisy.obj"));
    CliResult r = run_cli(tmp, "denoise " + tmp.path("noisy.obj").string() +
                                   " --method hlo --iterations 5 -o " +
                                   tmp.path("out.obj").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("runtime") != std::string::npos);
    CHECK(r.stdout_text.find("enclosed volume") != std::string::npos);
    CHECK(fs::exists(tmp.path("out.obj")));
}

TEST_CASE("cli: uniform smoothing shrinks the vase-like fixture") {
    TempDir tmp;
    write_mesh(shapes::icosphere(2), tmp.path("in.obj"));
    CliResult r = run_cli(tmp, "denoise " + tmp.path("in.obj").string() +
                                   " --method uniform --iterations 15 -o " +
                                   tmp.path("out.obj").string());
    REQUIRE(r.exit_code == 0);
    const double before = enclosed_volume(read_mesh(tmp.path("in.obj")));
    const double after = enclosed_volume(read_mesh(tmp.path("out.obj")));
    CHECK(after < 0.8 * before);
}

TEST_CASE("cli: emit-trace writes the per-iteration CSV") {
    TempDir tmp;
    write_mesh(add_noise(shapes::icosphere(1), NoiseSpec{0.2, 3}), tmp.path("in.obj"));
    CliResult r = run_cli(tmp, "denoise " + tmp.path("in.obj").string() +
                                   " --iterations 4 --emit-trace " +
                                   tmp.path("trace.csv").string() + " -o " +
                                   tmp.path("out.obj").string());
    REQUIRE(r.exit_code == 0);
    std::ifstream trace(tmp.path("trace.csv"));
    std::string header;
    std::getline(trace, header);
    CHECK(header == "iteration,avg_displacement,total_delta_norm,mean_curvature_energy");
    int rows = 0;
    std::string line;
    while (std::getline(trace, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("cli: metrics on identical meshes is an all-zero row") {
    TempDir tmp;
    write_mesh(shapes::icosphere(1), tmp.path("a.obj"));
    write_mesh(shapes::icosphere(1), tmp.path("b.obj"));
    CliResult r = run_cli(tmp, "metrics " + tmp.path("a.obj").string() + " " +
                                   tmp.path("b.obj").string() + " -o " +
                                   tmp.path("report.csv").string());
    REQUIRE(r.exit_code == 0);
    std::ifstream csv(tmp.path("report.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    CHECK(header == QualityReport::csv_header());
    CHECK(row.rfind("0,0,0,", 0) == 0);
}

TEST_CASE("cli: full pipeline lowers MSAE against the noisy input") {
    TempDir tmp;
    const TriMesh truth = shapes::icosphere(2);
    write_mesh(truth, tmp.path("truth.obj"));

    CliResult noise = run_cli(tmp, "add-noise " + tmp.path("truth.obj").string() +
                                       " --sigma 0.2 --seed 11 -o " +
                                       tmp.path("noisy.obj").string());
    REQUIRE(noise.exit_code == 0);
    CliResult den = run_cli(tmp, "denoise " + tmp.path("noisy.obj").string() +
                                     " --method hlo --iterations 3 -o " +
                                     tmp.path("out.obj").string());
    REQUIRE(den.exit_code == 0);

    const double noisy_msae = msae(read_mesh(tmp.path("noisy.obj")), truth).value;
    const double out_msae = msae(read_mesh(tmp.path("out.obj")), truth).value;
    CHECK(out_msae < noisy_msae);

    CliResult met = run_cli(tmp, "metrics " + tmp.path("out.obj").string() + " " +
                                     tmp.path("truth.obj").string() + " --signed-error-field " +
                                     tmp.path("err.csv").string());
    REQUIRE(met.exit_code == 0);
    CHECK(fs::exists(tmp.path("err.csv")));
}

TEST_CASE("cli: identical arguments produce bit-identical outputs") {
    TempDir tmp;
    write_mesh(shapes::icosphere(2), tmp.path("truth.obj"));
    for (const std::string tag : {"1", "2"}) {
        REQUIRE(run_cli(tmp, "add-noise " + tmp.path("truth.obj").string() +
                                 " --sigma 0.4 --seed 99 -o " + tmp.path("n" + tag + ".obj").string())
                    .exit_code == 0);
        REQUIRE(run_cli(tmp, "denoise " + tmp.path("n" + tag + ".obj").string() +
                                 " --iterations 5 -o " + tmp.path("d" + tag + ".obj").string())
                    .exit_code == 0);
    }
    CHECK(slurp(tmp.path("n1.obj")) == slurp(tmp.path("n2.obj")));
    CHECK(slurp(tmp.path("d1.obj")) == slurp(tmp.path("d2.obj")));
}
