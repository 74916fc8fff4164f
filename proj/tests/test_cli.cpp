#include <doctest.h>

#include <stdexcept>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TBVP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("tbvp_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
    const fs::path p = dir / "run.ini";
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::string line;
    std::getline(in, line);
    return line;
}

const std::string kOracle = "[problem]\nbuiltin = linear_oracle\n"
                            "[numerics]\nmesh_n = 64\nmesh_n_hist = 16\n"
                            "[run]\nrho = 1\n";

} // namespace

TEST_CASE("solve writes csv outputs and exits 0") {
    const auto dir = fresh_dir("solve");
    const auto cfg = write_config(dir, kOracle);
    CHECK(run_cli("solve --config " + cfg.string() + " --out " + (dir / "out").string()) == 0);
    CHECK(first_line(dir / "out" / "solution.csv") == "t,u");
    CHECK(first_line(dir / "out" / "branch.csv") == "rho,lambda,residual,iterations,converged");
    CHECK(fs::exists(dir / "out" / "verification.txt"));
    CHECK(fs::exists(dir / "out" / "hypothesis_report.txt"));
}

TEST_CASE("solve output is byte-identical across runs") {
    const auto dir = fresh_dir("repro");
    const auto cfg = write_config(dir, kOracle);
    REQUIRE(run_cli("solve --config " + cfg.string() + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli("solve --config " + cfg.string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "solution.csv") == slurp(dir / "b" / "solution.csv"));
    CHECK(slurp(dir / "a" / "branch.csv") == slurp(dir / "b" / "branch.csv"));
}

TEST_CASE("config errors exit with code 2") {
    const auto dir = fresh_dir("config");
    CHECK(run_cli("solve --config " + (dir / "missing.ini").string()) == 2);
    const auto bad_key = write_config(dir, "[problem]\nbogus = 1\n[run]\nrho = 1\n");
    CHECK(run_cli("solve --config " + bad_key.string()) == 2);
    const auto bad_geom = write_config(
        dir, "[geometry]\nbeta = 0.5\neta = 0.6\n[problem]\nbuiltin = linear_oracle\n"
             "[run]\nrho = 1\n");
    CHECK(run_cli("solve --config " + bad_geom.string()) == 2);
    const auto bad_rho = write_config(dir, kOracle + "rho = -1\n");
    CHECK(run_cli("solve --config " + bad_rho.string()) == 2);
    CHECK(run_cli("frobnicate --config " + bad_rho.string()) == 2);
}

TEST_CASE("hypothesis failure exits with code 3 and --force bypasses the gate") {
    const auto dir = fresh_dir("check");
    // f takes negative values on [0,1], so the range condition fails
    const auto cfg = write_config(
        dir, "[problem]\nf = t-1\nsigma = t\nomega = 0\nB_kind = zero\n"
             "[numerics]\nmesh_n = 64\nmesh_n_hist = 16\n[run]\nrho = 1\n");
    const std::string out = " --out " + (dir / "out").string();
    CHECK(run_cli("check --config " + cfg.string() + out) == 3);
    CHECK(fs::exists(dir / "out" / "hypothesis_report.txt"));
    CHECK(run_cli("solve --config " + cfg.string() + out) == 3);
    // forced solve proceeds past the gate; the negative integrand is then a
    // hard operator error (exit 1), not a silent answer
    CHECK(run_cli("solve --force --config " + cfg.string() + out) == 1);
}

TEST_CASE("non-convergence exits with code 4") {
    const auto dir = fresh_dir("noconv");
    const auto cfg = write_config(dir, kOracle + "[numerics]\nmax_iterations = 2\n"
                                               "solver_tol = 1e-14\n");
    const std::string out = " --out " + (dir / "out").string();
    CHECK(run_cli("solve --config " + cfg.string() + out) == 4);
    CHECK(run_cli("sweep --config " + cfg.string() + out) == 4);
}

TEST_CASE("check passes on the reference example") {
    const auto dir = fresh_dir("refcheck");
    const auto cfg = write_config(dir, "[problem]\nbuiltin = paper_example\n[run]\nrho = 1\n");
    CHECK(run_cli("check --config " + cfg.string() + " --out " + (dir / "out").string()) == 0);
}

TEST_CASE("sweep writes the branch table") {
    const auto dir = fresh_dir("sweep");
    const auto cfg = write_config(dir, kOracle + "rho = 0.5, 1, 2\n");
    const std::string out = (dir / "out").string();
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + out) == 0);
    CHECK(first_line(dir / "out" / "branch.csv") == "rho,lambda,residual,iterations,converged");
    std::istringstream in(slurp(dir / "out" / "branch.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 4);
    CHECK(slurp(dir / "out" / "sweep_meta.txt").find("warm_start yes") != std::string::npos);
}

TEST_CASE("kernel command tabulates the Green's function") {
    const auto dir = fresh_dir("kernel");
    const auto cfg = write_config(dir, "[problem]\nbuiltin = linear_oracle\n"
                                       "[output]\nkernel_grid = 8\n");
    CHECK(run_cli("kernel --config " + cfg.string() + " --out " + (dir / "out").string()) == 0);
    CHECK(first_line(dir / "out" / "kernel.csv") == "t,s,k");
}
