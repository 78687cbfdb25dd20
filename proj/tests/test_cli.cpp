#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "circuitarray/cli_app.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using circuitarray::run_cli;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("circuitarray_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
    std::ofstream out(p);
    for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST_CASE("array command writes tables in all formats") {
    fs::path dir = fresh_dir("array");
    CHECK(run_cli({"array", "c", "--max-j", "4", "--format", "json",
                   "--out", (dir / "c.json").string()}) == 0);
    auto j = nlohmann::json::parse(slurp(dir / "c.json"));
    CHECK(j["variant"] == "numeric");
    bool found = false;
    for (const auto& e : j["entries"])
        if (e["i"] == 3 && e["j"] == 4) {
            CHECK(e["value"] == "1965403/1904448");
            found = true;
        }
    CHECK(found);

    CHECK(run_cli({"array", "cx", "--max-j", "2", "--format", "json",
                   "--out", (dir / "cx.json").string()}) == 0);
    auto jx = nlohmann::json::parse(slurp(dir / "cx.json"));
    bool seed = false;
    for (const auto& e : jx["entries"])
        if (e["i"] == 0 && e["j"] == 1) {
            CHECK(e["num"] == "X - 3");
            CHECK(e["den"] == "X");
            seed = true;
        }
    CHECK(seed);

    CHECK(run_cli({"array", "cm", "--max-j", "1", "--format", "csv",
                   "--out", (dir / "cm.csv").string()}) == 0);
    CHECK(slurp(dir / "cm.csv") == "i,j,num,den\n0,1,X1,1\n");

    CHECK(run_cli({"array", "zz", "--max-j", "2"}) == 2);
    CHECK(run_cli({"array", "c", "--max-j", "0"}) == 2);
}

TEST_CASE("array output is byte-identical across runs") {
    fs::path dir = fresh_dir("determinism");
    for (const char* fmt : {"md", "json", "csv"}) {
        fs::path a = dir / (std::string("a.") + fmt), b = dir / (std::string("b.") + fmt);
        CHECK(run_cli({"array", "cx", "--max-j", "4", "--format", fmt, "--out", a.string()}) == 0);
        CHECK(run_cli({"array", "cx", "--max-j", "4", "--format", fmt, "--out", b.string()}) == 0);
        CHECK(slurp(a) == slurp(b));
    }
}

TEST_CASE("reduce command") {
    fs::path dir = fresh_dir("reduce");
    fs::path out = dir / "g.json";
    CHECK(run_cli({"reduce", "--n", "3", "--times", "1", "--out", out.string()}) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["n"] == 2);
    CHECK(j["m"] == 1);
    int boundary = 0, interior = 0;
    for (const auto& e : j["edges"]) {
        std::string content = e["value"]["content"];
        if (content == "2/3")
            ++boundary;
        else if (content == "1")
            ++interior;
    }
    CHECK(boundary == 6);
    CHECK(interior == 3);

    CHECK(run_cli({"reduce", "--n", "6", "--times", "2", "--out", out.string()}) == 0);
    auto j2 = nlohmann::json::parse(slurp(out));
    bool central = false;
    for (const auto& e : j2["edges"])
        if (e["r"] == 3 && e["d"] == 2 && e["side"] == "L") {
            CHECK(e["value"]["content"] == "26/27");
            central = true;
        }
    CHECK(central);

    CHECK(run_cli({"reduce", "--n", "2", "--times", "2"}) == 2);

    CHECK(run_cli({"reduce", "--n", "3", "--times", "1", "--with-tails",
                   "--out", out.string()}) == 0);
    auto j3 = nlohmann::json::parse(slurp(out));
    CHECK(j3["tails"] == nlohmann::json::array({"1/3", "1/3", "1/3"}));
}

TEST_CASE("recur command") {
    fs::path dir = fresh_dir("recur");
    fs::path fib = dir / "fib.txt";
    write_lines(fib, {"0", "1", "1", "2", "3", "5", "8", "13", "21", "34"});
    CHECK(run_cli({"recur", fib.string()}) == 0);

    fs::path nines = dir / "nines.txt";
    write_lines(nines, {"1", "9", "81", "729", "6561", "59049"});
    CHECK(run_cli({"recur", nines.string()}) == 0);

    fs::path prod = dir / "prod.txt";
    std::vector<std::string> lines;
    for (int s = 0; s < 10; ++s) {
        long long v = 1, w = 1;
        for (int i = 0; i < s; ++i) v *= 3, w *= 2;
        lines.push_back(std::to_string((v + w) * (v + w)));
    }
    write_lines(prod, lines);
    CHECK(run_cli({"recur", prod.string()}) == 0);

    fs::path rnd = dir / "rnd.txt";
    write_lines(rnd, {"1", "4", "9", "7", "3", "8", "2", "6", "5", "1", "4", "1"});
    CHECK(run_cli({"recur", rnd.string()}) == 3);

    fs::path tiny = dir / "tiny.txt";
    write_lines(tiny, {"1", "2"});
    CHECK(run_cli({"recur", tiny.string()}) == 3);
}

TEST_CASE("audit command writes verdict and ledger") {
    fs::path dir = fresh_dir("audit");
    CHECK(run_cli({"audit", "--c-max", "2", "--max-order", "6",
                   "--out", dir.string()}) == 0);
    auto verdict = nlohmann::json::parse(slurp(dir / "verdict.json"));
    CHECK(verdict["summary"]["fail"] == 0);
    CHECK(verdict["summary"]["reference-discrepancy"].get<int>() >= 3);
    std::string ledger = slurp(dir / "ledger.md");
    CHECK(ledger.find("Discrepancy ledger") != std::string::npos);
    CHECK(ledger.find("(3,4)") != std::string::npos);
}

TEST_CASE("tables command honours the output directory environment override") {
    fs::path dir = fresh_dir("tables");
    setenv("CIRCUITARRAY_OUT_DIR", dir.string().c_str(), 1);
    CHECK(run_cli({"tables"}) == 0);
    unsetenv("CIRCUITARRAY_OUT_DIR");
    for (const char* name : {"table_c.md", "table_c.json", "table_c.csv", "table_cx.md",
                             "table_cx.json", "table_cx.csv", "table_cm.md", "table_cm.json",
                             "table_cm.csv"})
        CHECK(fs::exists(dir / name));
    // emitted tables re-parse through the JSON reader
    auto j = nlohmann::json::parse(slurp(dir / "table_cm.json"));
    CHECK(j["variant"] == "multivariate");
}

TEST_CASE("built binary runs end to end") {
    const char* bin = std::getenv("CIRCUITARRAY_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "CIRCUITARRAY_BIN not set");
    fs::path dir = fresh_dir("binary");
    std::string cmd = std::string("\"") + bin + "\" array c --max-j 3 --format csv --out " +
                      (dir / "c.csv").string() + " > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    std::string csv = slurp(dir / "c.csv");
    CHECK(csv.find("2,2,1,2") != std::string::npos);  // C(2,2) = 1/2
}
