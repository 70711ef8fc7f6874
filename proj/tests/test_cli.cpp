#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "silab/graph.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SILAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("silab_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int counter() {
        static int c = 0;
        return c++;
    }
};

} // namespace

TEST_CASE("generate writes edge list, metadata and manifest") {
    TempDir tmp;
    const std::string out = (tmp.path / "gw").string();
    CHECK(run("generate --model gw-conditioned --offspring poisson1 --depth 20 --seed 7 --out " +
              out) == 0);
    CHECK(fs::exists(fs::path(out) / "graph.edges"));
    CHECK(fs::exists(fs::path(out) / "metadata.json"));
    CHECK(fs::exists(fs::path(out) / "manifest.json"));
    const std::string meta = slurp(fs::path(out) / "metadata.json");
    CHECK(meta.find("attempts") != std::string::npos);
    const silab::RootedGraph g =
        silab::read_edge_list_file((fs::path(out) / "graph.edges").string());
    CHECK(g.is_tree());
}

TEST_CASE("generate ust: tree plus extra edge") {
    TempDir tmp;
    const std::string out = (tmp.path / "ust").string();
    CHECK(run("generate --model ust --n 200 --seed 3 --out " + out) == 0);
    const silab::RootedGraph g =
        silab::read_edge_list_file((fs::path(out) / "graph.edges").string());
    CHECK(g.n() == 200);
    CHECK(g.m() == 200);
}

TEST_CASE("generate er largest cluster with surplus metadata") {
    TempDir tmp;
    const std::string out = (tmp.path / "er").string();
    CHECK(run("generate --model er --n 3000 --lambda 5 --seed 1 --out " + out) == 0);
    CHECK(slurp(fs::path(out) / "metadata.json").find("surplus") != std::string::npos);
}

TEST_CASE("kappa command on fixtures; exit codes on errors") {
    TempDir tmp;
    const std::string out = (tmp.path / "star").string();
    CHECK(run("generate --model star --n 10 --root 0 --seed 0 --out " + out) == 0);
    CHECK(run("kappa --graph " + out + "/graph.edges") == 0);
    CHECK(run("kappa --graph " + out + "/graph.edges --per-vertex --d 3") == 0);
    CHECK(run("kappa --graph /nonexistent.edges") == 2);  // data error
    CHECK(run("nonsense-subcommand") == 1);               // usage error
    // malformed file -> parse error, exit 2
    const fs::path bad = tmp.path / "bad.edges";
    std::ofstream(bad) << "3 2 0\n0 1\nx\n";
    CHECK(run("kappa --graph " + bad.string()) == 2);
}

TEST_CASE("curve: manifest rerun reproduces byte-identical CSV, worker-independent") {
    TempDir tmp;
    const std::string g = (tmp.path / "cyc").string();
    CHECK(run("generate --model cycle --n 64 --seed 0 --out " + g) == 0);

    const std::string o1 = (tmp.path / "c1").string(), o2 = (tmp.path / "c2").string(),
                      o3 = (tmp.path / "c3").string();
    CHECK(run("curve --graph " + g + "/graph.edges --alpha 0.8 --runs 2000 --seed 11 --workers 1 --out " +
              o1) == 0);
    CHECK(run("curve --graph " + g + "/graph.edges --alpha 0.8 --runs 2000 --seed 11 --workers 4 --out " +
              o2) == 0);
    CHECK(slurp(fs::path(o1) / "curve.csv") == slurp(fs::path(o2) / "curve.csv"));
    CHECK(slurp(fs::path(o1) / "plateau.json") == slurp(fs::path(o2) / "plateau.json"));

    CHECK(run("rerun " + o1 + "/manifest.json --out " + o3) == 0);
    CHECK(slurp(fs::path(o1) / "curve.csv") == slurp(fs::path(o3) / "curve.csv"));
}

TEST_CASE("experiment subcommand: pass/fail exit codes and report") {
    TempDir tmp;
    const std::string out = (tmp.path / "exp").string();
    // small q-scaling run passes quickly
    CHECK(run("experiment q-scaling --alpha 0.8 --runs 4000 --seed 5 --out " + out) ==
          0);
    const std::string rep = slurp(fs::path(out) / "report.json");
    CHECK(rep.find("\"verdict\": \"pass\"") != std::string::npos);
    CHECK(rep.find("provenance") != std::string::npos);
    CHECK(run("experiment unknown-id --out " + out) == 1);
}

TEST_CASE("thresholds registry prints") {
    CHECK(run("thresholds") == 0);
}
