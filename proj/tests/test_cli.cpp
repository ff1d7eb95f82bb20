#include "doctest.h"

#include "commands.hpp"
#include "heatrate/io.hpp"
#include "heatrate/sampling.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace heatrate;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    Run r;
    r.code = cli::run_cli(args, o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("heatrate_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const json& j) const {
        const auto p = path / name;
        std::ofstream(p) << j.dump(2);
        return p.string();
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string first_line(const std::string& p) {
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    return line;
}

MaterialParams lso(double l, double t, double m, double n, double k) {
    MaterialParams p;
    p.lambda = l;
    p.tau = t;
    p.mu = m;
    p.nu = n;
    p.kappa = k;
    p.theta_ref = 1.0;
    return p;
}

json lso_config(const MaterialParams& p, double length = 1.0) {
    return json{{"model", json(ModelKind{LSO{p}})}, {"domain", {{"length", length}}}};
}

}  // namespace

TEST_CASE("consistency: item-1 parameters") {
    TempDir t;
    Rng rng(1);
    const auto p = sample_item(1, rng, true).params;
    const auto r = run({"consistency", "--model", t.write("m.json", json(ModelKind{LSO{p}})), "--out", t.sub("o")});
    CHECK(r.code == 0);
    const auto rep = json::parse(r.out);
    CHECK(rep["verdict"] == "consistent");
    bool item1 = false;
    for (const auto& it : rep["items"])
        if (it["item"] == 1) {
            item1 = true;
            CHECK(it["psd"] == true);
        }
    CHECK(item1);
    CHECK(r.out.find("\"psd\": true") != std::string::npos);
    CHECK(fs::exists(t.sub("o") + "/consistency.json"));
}

TEST_CASE("consistency: infeasible and degenerate parameters") {
    TempDir t;
    Rng rng(2);
    const auto neg = run({"consistency", "--model", t.write("n.json", json(ModelKind{LSO{sample_negative_mu(rng)}}))});
    CHECK(neg.code == 3);
    CHECK(json::parse(neg.out)["verdict"] == "infeasible");
    const auto l0 = run({"consistency", "--model", t.write("l.json", json(ModelKind{LSO{lso(0, 1, 1, 1, 1)}}))});
    CHECK(l0.code == 2);
    CHECK(l0.err.find("Jeffreys") != std::string::npos);
    const auto k0 = run({"consistency", "--model", t.write("k.json", json(ModelKind{LSO{lso(1, 1, 1, 1, 0)}}))});
    CHECK(k0.code == 2);
    CHECK(k0.err.find("Burgers") != std::string::npos);
    const auto mcv = run({"consistency", "--model", t.write("c.json", json(ModelKind{MCV{1, -1}}))});
    CHECK(mcv.code == 3);
}

TEST_CASE("config errors exit 2") {
    TempDir t;
    CHECK(run({"consistency", "--model", t.sub("missing.json")}).code == 2);
    std::ofstream(t.sub("bad.json")) << "{ not json";
    CHECK(run({"consistency", "--model", t.sub("bad.json")}).code == 2);
    json extra = lso_config(lso(1, 1, 1, 1, 1));
    extra["surprise"] = 1;
    CHECK(run({"stability", "--model", t.write("x.json", extra)}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"consistency"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("stability: unit parameters on L = pi") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(1, 1, 1, 1, 1), M_PI));
    const auto r = run({"stability", "--model", cfg, "--modes", "10", "--out", t.sub("o")});
    CHECK(r.code == 0);
    const auto rep = json::parse(r.out);
    CHECK(rep["modes"].size() == 10);
    for (const auto& m : rep["modes"]) CHECK(m["verdict"] == "Stable");
    CHECK(rep["conditions"]["mu_bound"].get<double>() == doctest::Approx(4.0));
    CHECK(first_line(t.sub("o") + "/stability.csv") == "n,Lambda,verdict,max_re_root");
}

TEST_CASE("stability: tuned mode is marginal") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(1, 1, 1, 1.0 / 81.0, 1), M_PI));
    const auto r = run({"stability", "--model", cfg, "--modes", "5", "--tune-mode", "3"});
    CHECK(r.code == 0);
    for (const auto& m : json::parse(r.out)["modes"])
        CHECK(m["verdict"] == (m["n"] == 3 ? "Marginal" : "Stable"));
}

TEST_CASE("stability: failing conditions exit 3 with witnesses") {
    TempDir t;
    const auto r = run({"stability", "--model", t.write("k.json", lso_config(lso(1, 1, 1, 1, -0.1)))});
    CHECK(r.code == 3);
    const auto rep = json::parse(r.out);
    CHECK(rep["conditions"]["pass"] == false);
    CHECK_FALSE(rep["conditions"]["witnesses"].empty());
    CHECK(run({"stability", "--model", t.write("m.json", lso_config(lso(1, 1, 5, 1, 1)))}).code == 3);
}

TEST_CASE("roots and simulate write CSV") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(0.5, 1, 1, 1, 1)));
    CHECK(run({"roots", "--model", cfg, "--modes", "4", "--out", t.sub("r")}).code == 0);
    CHECK(first_line(t.sub("r") + "/roots.csv") == "n,Lambda,root,re,im");
    const auto s = run({"simulate", "--model", cfg, "--horizon", "1", "--modes", "16", "--grid", "33", "--times", "3",
                        "--out", t.sub("s")});
    CHECK(s.code == 0);
    CHECK(first_line(t.sub("s") + "/field.csv") == "t,X,theta");
    std::ifstream f(t.sub("s") + "/field.csv");
    int lines = 0;
    for (std::string l; std::getline(f, l);) ++lines;
    CHECK(lines == 1 + 3 * 33);
    CHECK(run({"simulate", "--model", cfg, "--horizon", "0"}).code == 2);
    CHECK(run({"simulate", "--model", cfg}).code == 2);
    const auto bad = t.write("b.json", lso_config(lso(1, 1, 5, 1, 1)));
    CHECK(run({"simulate", "--model", bad, "--horizon", "1", "--modes", "8"}).code == 3);
    CHECK(run({"simulate", "--model", bad, "--horizon", "1", "--modes", "8", "--allow-unstable"}).code == 0);
}

TEST_CASE("sweep: mu flips at the bound") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(1, 1, 1, 1, 1)));
    const auto r = run({"sweep", "--model", cfg, "--sweep", "mu:0:5:11", "--out", t.sub("o")});
    CHECK(r.code == 0);
    std::ifstream f(t.sub("o") + "/sweep.csv");
    std::string line;
    std::getline(f, line);
    CHECK(line == "mu,items,consistent,stable,regime,mu_bound");
    int rows = 0;
    while (std::getline(f, line)) {
        const double mu = std::stod(line.substr(0, line.find(',')));
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        REQUIRE(cols.size() == 6);
        CHECK(cols[3] == (mu < 4.0 ? "1" : "0"));
        ++rows;
    }
    CHECK(rows == 11);
}

TEST_CASE("sweep: kappa = 0 flips on the closed-form line") {
    TempDir t;
    // tau^2 nu / lambda with tau = 2, lambda = 1: flip where 4 nu = mu = 2.
    const auto cfg = t.write("u.json", lso_config(lso(1, 2, 2, 1, 0)));
    const auto r = run({"sweep", "--model", cfg, "--sweep", "nu:0.25:1:7", "--out", t.sub("o")});
    CHECK(r.code == 0);
    std::ifstream f(t.sub("o") + "/sweep.csv");
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        const double nu = std::stod(cols[0]);
        CHECK(cols[1] == "excluded");
        CHECK(cols[3] == (4 * nu >= 2.0 ? "1" : "0"));
    }
}

TEST_CASE("sweep: malformed axes exit 2") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(1, 1, 1, 1, 1)));
    CHECK(run({"sweep", "--model", cfg, "--sweep", "mu:0:5:1"}).code == 2);
    CHECK(run({"sweep", "--model", cfg, "--sweep", "mu:5:0:3"}).code == 2);
    CHECK(run({"sweep", "--model", cfg, "--sweep", "rho:0:1:3"}).code == 2);
    CHECK(run({"sweep", "--model", cfg, "--sweep", "mu:0:5"}).code == 2);
    CHECK(run({"sweep", "--model", cfg, "--sweep", ""}).code == 2);
    CHECK(run({"sweep", "--model", cfg}).code == 2);
    CHECK(run({"sweep", "--model", cfg, "--sweep", "mu:0:1:2", "--sweep", "nu:0:1:2", "--sweep", "tau:1:2:2"}).code == 2);
    const auto mcv = t.write("m.json", json(ModelKind{MCV{1, 1}}));
    CHECK(run({"sweep", "--model", mcv, "--sweep", "mu:0:1:2"}).code == 2);
}

TEST_CASE("sweep: two axes in row-major order and byte-identical reruns") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(1, 1, 1, 1, 1)));
    const std::vector<std::string> args{"sweep", "--model", cfg, "--sweep", "mu:0:5:6", "--sweep", "nu:0.5:2:4"};
    auto a = args, b = args;
    a.insert(a.end(), {"--out", t.sub("a")});
    b.insert(b.end(), {"--out", t.sub("b")});
    CHECK(run(a).code == 0);
    CHECK(run(b).code == 0);
    CHECK(slurp(t.sub("a") + "/sweep.csv") == slurp(t.sub("b") + "/sweep.csv"));
    std::ifstream f(t.sub("a") + "/sweep.csv");
    std::string line;
    std::getline(f, line);
    CHECK(line.rfind("mu,nu,", 0) == 0);
    std::getline(f, line);
    CHECK(line.rfind("0,0.5,", 0) == 0);
    std::getline(f, line);
    CHECK(line.rfind("0,1,", 0) == 0);
}

TEST_CASE("validate: passing subset, fault injection and determinism") {
    TempDir t;
    const auto ok = run({"validate", "--checks", "classifier,hurwitz,residual", "--seed", "3", "--out", t.sub("a")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS classifier") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    const auto again = run({"validate", "--checks", "classifier,hurwitz,residual", "--seed", "3", "--out", t.sub("b")});
    CHECK(again.out == ok.out);
    CHECK(slurp(t.sub("a") + "/validate.json") == slurp(t.sub("b") + "/validate.json"));

    const auto fault = run({"validate", "--checks", "classifier", "--inject-fault", "corrupt-A"});
    CHECK(fault.code == 1);
    CHECK(fault.out.find("FAIL classifier") != std::string::npos);
    CHECK(run({"validate", "--checks", "nope"}).code == 2);
    CHECK(run({"validate", "--checks", "classifier", "--inject-fault", "other"}).code == 2);
}

TEST_CASE("simulate output is byte-identical across runs") {
    TempDir t;
    const auto cfg = t.write("u.json", lso_config(lso(0.5, 1, 1, 1, 1)));
    for (const char* d : {"a", "b"})
        CHECK(run({"simulate", "--model", cfg, "--horizon", "2", "--modes", "32", "--out", t.sub(d)}).code == 0);
    CHECK(slurp(t.sub("a") + "/field.csv") == slurp(t.sub("b") + "/field.csv"));
    CHECK(slurp(t.sub("a") + "/simulate.json") == slurp(t.sub("b") + "/simulate.json"));
}
