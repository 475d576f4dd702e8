#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "idelta/cli.hpp"
#include "idelta/error.hpp"

using namespace idelta;
using namespace idelta::cli;

namespace {

std::string render(const ExperimentConfig& c)
{
    std::ostringstream os;
    write_experiment(c, os);
    return os.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        out.push_back(line);
    }
    return out;
}

int invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "idelta");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("idelta_test_" + name);
}

} // namespace

TEST_CASE("mode names round-trip")
{
    for (Mode m : {Mode::diffusion_boundary, Mode::quantum_boundary, Mode::survival_diffusion,
                   Mode::survival_quantum, Mode::oracle_diffusion, Mode::oracle_quantum, Mode::scattering,
                   Mode::asymptotics}) {
        CHECK(parse_mode(mode_name(m)) == m);
    }
    CHECK(mode_name(Mode::survival_quantum) == "survival-quantum");
    CHECK_THROWS_AS(parse_mode("warp"), ConfigError);
}

TEST_CASE("presets")
{
    const ExperimentConfig d = preset("paper-diffusion");
    CHECK(d.mode == Mode::survival_diffusion);
    CHECK(d.kappa == 1.0);
    CHECK(d.dee == 1.0);
    CHECK(d.x0 == 1.0);
    CHECK(d.t_max == 1e4);

    const ExperimentConfig q = preset("paper-quantum");
    CHECK(q.mode == Mode::survival_quantum);
    CHECK(q.hbar == 1.0);
    CHECK(q.mass == 1.0);
    CHECK(q.k == 1.0);
    CHECK(q.x0 == 1.0);
    CHECK(q.a == 0.5);
    CHECK(q.t_max == 1e4);
    CHECK(q.normalize);

    CHECK(preset("paper-asymptotics").mode == Mode::asymptotics);
    const ExperimentConfig o = preset("oracle-cross-check");
    CHECK(o.mode == Mode::oracle_quantum);
    CHECK(o.grid_half_width == 60.0);
    CHECK(o.grid_nodes == 12001);
    CHECK(o.t_max == 10.0);
    CHECK_THROWS_AS(preset("bogus"), UnknownPreset);
}

TEST_CASE("default start times")
{
    ExperimentConfig c;
    c.mode = Mode::diffusion_boundary;
    CHECK(resolved_t_start(c) == 0.01);
    c.t_start = 0.5;
    CHECK(resolved_t_start(c) == 0.5);
    c = preset("paper-quantum");
    CHECK(resolved_t_start(c) == 0.0);
    c.mode = Mode::asymptotics;
    CHECK(resolved_t_start(c) > 2.5);
    CHECK(resolved_t_start(c) == doctest::Approx(2.5));
}

TEST_CASE("scattering sweep")
{
    ExperimentConfig c;
    c.mode = Mode::scattering;
    c.steps = 400;
    const auto rows = lines(render(c));
    REQUIRE(rows.size() > 3);
    CHECK(rows[0].rfind("# idelta 1.0.0 mode=scattering", 0) == 0);
    CHECK(rows[1] == "u,abs_r2,abs_t2,absorbed");
    CHECK(rows.size() == 2 + 401 + 2);
    CHECK(rows[rows.size() - 2] == "# max_absorbed=0.5");
    CHECK(rows.back() == "# u_at_max=1");
}

TEST_CASE("diffusion-boundary columns and determinism")
{
    ExperimentConfig c;
    c.mode = Mode::diffusion_boundary;
    c.t_max = 1.0;
    c.steps = 990;
    const std::string first = render(c);
    CHECK(first == render(c));
    const auto rows = lines(first);
    CHECK(rows[1] == "tau,p_closed,p_volterra,rel_err");
    CHECK(rows.size() == 2 + 991 + 1);
    CHECK(rows.back().rfind("# max_rel_err=", 0) == 0);
    // 17 significant digits.
    CHECK(rows[2] == "0.01,3.8796469987018508e-11,3.8796469987018501e-11,1.6657052916754703e-16");
}

TEST_CASE("header records every parameter")
{
    ExperimentConfig c;
    c.mode = Mode::quantum_boundary;
    c.k = 0.75;
    c.x0 = 1.5;
    c.t_max = 0.5;
    c.steps = 200;
    const std::string header = lines(render(c)).front();
    for (const char* key : {"mode=quantum-boundary", "dee=", "kappa=", "hbar=1", "mass=1", "k=0.75", "x0=1.5",
                            "a=0", "t-start=", "t-max=0.5", "steps=200", "normalize=true", "grid-half-width=",
                            "grid-nodes=", "initial-width=", "leakage-tolerance="}) {
        CAPTURE(key);
        CHECK(header.find(key) != std::string::npos);
    }
}

TEST_CASE("exit codes")
{
    std::ostringstream err;
    ExperimentConfig bad;
    bad.mode = Mode::oracle_diffusion;
    bad.dee = -1.0;
    bad.out = scratch("bad.csv").string();
    CHECK(run(bad, err) == 2);
    const std::string message = err.str();
    CHECK(message.find("configuration error") != std::string::npos);
    CHECK(std::count(message.begin(), message.end(), '\n') == 1);

    std::ostringstream err2;
    ExperimentConfig leak;
    leak.mode = Mode::oracle_diffusion;
    leak.grid_half_width = 3.0;
    leak.grid_nodes = 301;
    leak.initial_width = 0.2;
    leak.t_max = 5.0;
    leak.steps = 500;
    leak.out = scratch("leak.csv").string();
    CHECK(run(leak, err2) == 3);
    CHECK(err2.str().find("wall") != std::string::npos);

    CHECK(invoke({"--preset", "bogus"}) == 2);
    CHECK(invoke({"--mode", "warp"}) == 2);
}

TEST_CASE("config file and flag precedence")
{
    const auto cfg = scratch("run.cfg");
    const auto out = scratch("run.csv");
    {
        std::ofstream f(cfg);
        f << "mode=quantum-boundary\nk=0.5\nx0=2\nt-max=0.3\nsteps=100\n";
    }
    REQUIRE(invoke({"--config", cfg.string(), "--x0", "1.25", "--out", out.string()}) == 0);
    const std::string header = lines(slurp(out)).front();
    CHECK(header.find("mode=quantum-boundary") != std::string::npos);
    CHECK(header.find(" k=0.5 ") != std::string::npos);
    CHECK(header.find(" x0=1.25 ") != std::string::npos);
    CHECK(header.find(" steps=100 ") != std::string::npos);

    // The file overrides the preset, flags override both.
    {
        std::ofstream f(cfg);
        f << "steps=200\nt-max=20\n";
    }
    REQUIRE(invoke({"--preset", "paper-asymptotics", "--config", cfg.string(), "--t-max", "40", "--out",
                    out.string()}) == 0);
    const auto rows = lines(slurp(out));
    CHECK(rows.front().find("mode=asymptotics") != std::string::npos);
    CHECK(rows.front().find(" steps=200 ") != std::string::npos);
    CHECK(rows.front().find(" t-max=40 ") != std::string::npos);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}
