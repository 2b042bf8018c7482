// End-to-end checks of the command-line tool: pipeline determinism, manifest
// reruns, output formats, and the exit-code contract. The binary path comes
// from the UNCERVALS_BIN environment variable set by ctest.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* env = std::getenv("UNCERVALS_BIN");
    REQUIRE_MESSAGE(env != nullptr, "UNCERVALS_BIN must point at the uncervals executable");
    return env;
}

int run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "uncervals_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("full pipeline is byte-identical under a fixed master seed") {
    const fs::path root = fresh_dir("pipeline");
    for (const char* tag : {"a", "b"}) {
        const fs::path dir = root / tag;
        fs::create_directories(dir);
        const std::string d = dir.string();
        REQUIRE(run("simulate --preset condcov --n 300 --seed 9 --out-dir " + d + "/sim") == 0);
        REQUIRE(run("calibrate --data " + d + "/sim/dataset.csv --model weibph --mode estar"
                    " --alpha 0.1 --seed 21 --out-dir " + d + "/cal") == 0);
        std::ofstream(dir / "x.csv") << "x1\n-1.25\n0\n1.75\n";
        REQUIRE(run("predict --model " + d + "/cal/model.json --calibration " + d +
                    "/cal/calibration.json --covariates " + d + "/x.csv --out " + d +
                    "/pred.csv") == 0);
    }
    CHECK(slurp(root / "a/sim/dataset.csv") == slurp(root / "b/sim/dataset.csv"));
    CHECK(slurp(root / "a/sim/truth.csv") == slurp(root / "b/sim/truth.csv"));
    CHECK(slurp(root / "a/cal/calibration.json") == slurp(root / "b/cal/calibration.json"));
    CHECK(slurp(root / "a/cal/model.json") == slurp(root / "b/cal/model.json"));
    CHECK(slurp(root / "a/pred.csv") == slurp(root / "b/pred.csv"));

    const std::string pred = slurp(root / "a/pred.csv");
    CHECK(pred.rfind("x1,lpb\n", 0) == 0);
}

TEST_CASE("rerunning from a manifest reproduces outputs exactly") {
    const fs::path dir = fresh_dir("manifest");
    const std::string d = dir.string();
    REQUIRE(run("simulate --preset rc30 --n 500 --seed 33 --out-dir " + d) == 0);
    const std::string first = slurp(dir / "dataset.csv");
    fs::remove(dir / "dataset.csv");
    REQUIRE(run("simulate --config " + d + "/manifest.json") == 0);
    CHECK(slurp(dir / "dataset.csv") == first);
}

TEST_CASE("calibrate emits a CalibrationResult with a q_hat field") {
    const fs::path dir = fresh_dir("caljson");
    const std::string d = dir.string();
    REQUIRE(run("simulate --preset condcov --n 200 --seed 1 --out-dir " + d + "/sim") == 0);
    REQUIRE(run("calibrate --data " + d + "/sim/dataset.csv --model weibph --mode e0"
                " --alpha 0.1 --out-dir " + d + "/cal") == 0);
    const std::string calib = slurp(dir / "cal/calibration.json");
    CHECK(calib.find("\"q_hat\"") != std::string::npos);
    CHECK(calib.find("\"mode\": \"e0\"") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, io, and numeric failures") {
    const fs::path dir = fresh_dir("exitcodes");
    const std::string d = dir.string();
    CHECK(run("no-such-subcommand") == 2);
    CHECK(run("simulate --no-such-flag 3") == 2);
    CHECK(run("fit --data " + d + "/missing.csv --model weibph --out-dir " + d) == 3);

    // Too few rows to split: a numeric failure, not an I/O one.
    std::ofstream(dir / "tiny.csv") << "l,u,x1\n0.1,0.4,0\n0.2,0.5,0\n";
    CHECK(run("calibrate --data " + d + "/tiny.csv --model weibph --out-dir " + d) == 4);
}

TEST_CASE("coverage reports are independent of the thread count") {
    const fs::path dir = fresh_dir("threads");
    const std::string d = dir.string();
    REQUIRE(run("coverage --preset condcov --n 200 --method uncervals --mode estar"
                " --estimator oracle --alpha 0.1 --reps 12 --n-test 300 --seed 77"
                " --threads 1 --out-dir " + d + "/t1") == 0);
    REQUIRE(run("coverage --preset condcov --n 200 --method uncervals --mode estar"
                " --estimator oracle --alpha 0.1 --reps 12 --n-test 300 --seed 77"
                " --threads 2 --out-dir " + d + "/t2") == 0);
    CHECK(slurp(dir / "t1/report.json") == slurp(dir / "t2/report.json"));
    CHECK(slurp(dir / "t1/replications.csv") == slurp(dir / "t2/replications.csv"));
}

TEST_CASE("a manifest for another subcommand is a usage error") {
    const fs::path dir = fresh_dir("wrongmanifest");
    const std::string d = dir.string();
    REQUIRE(run("simulate --preset condcov --n 200 --seed 2 --out-dir " + d) == 0);
    CHECK(run("calibrate --config " + d + "/manifest.json --out-dir " + d) == 2);
}

TEST_CASE("vccheck and gof write reports and tidy CSVs") {
    const fs::path dir = fresh_dir("reports");
    const std::string d = dir.string();
    REQUIRE(run("vccheck --budget 5000 --seed 2 --out-dir " + d + "/vc") == 0);
    CHECK(slurp(dir / "vc/report.json").find("\"shattered\": false") != std::string::npos);

    REQUIRE(run("simulate --preset condcov --n 300 --seed 4 --out-dir " + d + "/sim") == 0);
    REQUIRE(run("fit --data " + d + "/sim/dataset.csv --model turnbull --out-dir " + d +
                "/fit") == 0);
    REQUIRE(run("gof --data " + d + "/sim/dataset.csv --model " + d +
                "/fit/model.json --seed 6 --out-dir " + d + "/gof") == 0);
    const std::string ecdf = slurp(dir / "gof/ecdf.csv");
    CHECK(ecdf.rfind("phi_star,ecdf\n", 0) == 0);
}
