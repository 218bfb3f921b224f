#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <fstream>
#include <sstream>

#include "pcdae/cli.hpp"

using namespace pcdae;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("pcdae_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli run with t_end 0 writes the initial row only") {
    const fs::path dir = scratch("t0");
    const CliRun r = cli({"run", "--t-end", "0", "--out", dir.string()});
    CHECK(r.code == kExitOk);
    const std::string traj = slurp(dir / "trajectory.csv");
    CHECK(std::count(traj.begin(), traj.end(), '\n') == 2);
    CHECK(slurp(dir / "steps.csv") == "t,h,accepted\n");
    CHECK(slurp(dir / "metrics.txt").find("accepted_steps = 0") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CHECK(cli({"run", "--solver", "rk4", "--t-end", "0"}).code == kExitConfig);
    CHECK(cli({"run", "--rtol", "x"}).code == kExitConfig);
    CHECK(cli({"nonsense"}).code == kExitConfig);
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"run", "--config", "/nonexistent.cfg"}).code == kExitIo);
    CHECK(cli({"compare", "/nonexistent/a.csv", "/nonexistent/b.csv"}).code == kExitIo);
    CHECK(cli({"--help"}).code == kExitOk);

    const fs::path dir = scratch("codes");
    std::ofstream(dir / "bad.cfg") << "controller.rtol = 1e-6\nsolver.typo = itm\n";
    const CliRun bad = cli({"run", "--config", (dir / "bad.cfg").string()});
    CHECK(bad.code == kExitConfig);
    CHECK(bad.err.find("bad.cfg:2") != std::string::npos);
    CHECK(bad.err.find("solver.typo") != std::string::npos);

    // Writing into a path that is a regular file fails as IO.
    std::ofstream(dir / "file") << "x";
    CHECK(cli({"run", "--t-end", "0", "--out", (dir / "file").string()}).code == kExitIo);

    // Underflow is reported as a diverged run.
    CHECK(cli({"run", "--model", "smib", "--t-end", "1", "--rtol", "1e-14", "--atol", "1e-16",
               "--h-min", "1e-4", "--out", (dir / "div").string()})
              .code == kExitDiverged);
}

TEST_CASE("cli run is deterministic and config-driven") {
    const fs::path dir = scratch("det");
    std::ofstream(dir / "s.cfg") << "model.type = scalar-linear\nsolver.scheme = pc-hold\n"
                                    "run.t_end = 2\n";
    const std::string cfg = (dir / "s.cfg").string();
    CHECK(cli({"run", "--config", cfg, "--out", (dir / "a").string()}).code == kExitOk);
    CHECK(cli({"run", "--config", cfg, "--out", (dir / "b").string()}).code == kExitOk);
    for (const char* f : {"trajectory.csv", "steps.csv", "metrics.txt"}) {
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
        CHECK_FALSE(slurp(dir / "a" / f).empty());
    }

    const CliRun cmp = cli({"compare", (dir / "a" / "trajectory.csv").string(),
                            (dir / "b" / "trajectory.csv").string(), "--out",
                            (dir / "diff.csv").string()});
    CHECK(cmp.code == kExitOk);
    CHECK(cmp.out.find("max_abs = 0") != std::string::npos);
    CHECK(slurp(dir / "diff.csv").rfind("t,", 0) == 0);

    // A flag overrides the config value.
    CHECK(cli({"run", "--config", cfg, "--t-end", "1", "--out", (dir / "c").string()}).code ==
          kExitOk);
    CHECK(slurp(dir / "c" / "trajectory.csv").size() < slurp(dir / "a" / "trajectory.csv").size());
}

TEST_CASE("cli converge prints the fitted slope") {
    const CliRun r = cli({"converge", "--model", "linear-ode", "--solver", "itm"});
    CHECK(r.code == kExitOk);
    const auto pos = r.out.find("slope = ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 8)) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(cli({"converge", "--quantity", "nope"}).code == kExitConfig);
    CHECK(cli({"converge", "--steps", "0.1", "0.2", "0.3"}).code == kExitConfig);
}

TEST_CASE("cli bench orders pc-predict below pc-hold with the tight threshold") {
    const CliRun r = cli({"bench", "--t-end", "1"});
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    REQUIRE(kv.count("pc-predict.nonlinear_calls") == 1);
    REQUIRE(kv.count("pc-hold-tight.nonlinear_calls") == 1);
    REQUIRE(kv.count("itm.nonlinear_calls") == 1);
    REQUIRE(kv.count("pc-hold.nonlinear_calls") == 1);
    CHECK(std::stoull(kv["pc-predict.nonlinear_calls"]) <
          std::stoull(kv["pc-hold-tight.nonlinear_calls"]));
}
