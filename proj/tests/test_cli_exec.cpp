#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p =
            fs::temp_directory_path() / ("treeproj_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

Outcome run(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(TREEPROJ_BIN) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size())) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("project emits the exact result document") {
    const fs::path input = scratch_dir() / "worked.txt";
    spit(input, "0\n1\n4\n2\n0\n0\n5\n3\n");
    const Outcome r = run("project --input " + input.string() + " --d 2 --k 4");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["d"] == 2);
    CHECK(doc["J"] == 3);
    CHECK(doc["N"] == 8);
    CHECK(doc["k"] == 4);
    CHECK(doc["support"] == nlohmann::json::array({1, 2, 4, 7}));
    CHECK(doc["energy"] == 30.0);
    CHECK(doc["projection"] ==
          nlohmann::json::array({0.0, 1.0, 0.0, 2.0, 0.0, 0.0, 5.0, 0.0}));
    CHECK(doc["ops"]["bound"] == 392);
    CHECK(doc["ops"]["additions"].get<std::int64_t>() +
              doc["ops"]["comparisons"].get<std::int64_t>() +
              doc["ops"]["pass2_comparisons"].get<std::int64_t>() <=
          392);
}

TEST_CASE("project with k = N returns the input as its own projection") {
    const fs::path input = scratch_dir() / "full.txt";
    spit(input, "1\n2\n3\n4\n");
    const Outcome r = run("project --input " + input.string() + " --d 2 --k 4");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["projection"] == nlohmann::json::array({1.0, 2.0, 3.0, 4.0}));
    CHECK(doc["energy"] == 30.0);
}

TEST_CASE("project is deterministic, file output matches stdout, and round-trips") {
    const fs::path input = scratch_dir() / "rt.txt";
    spit(input, "0.5\n-1.25\n2\n0.75\n-3\n0.125\n1.5\n-0.625\n");
    const std::string args = "project --input " + input.string() + " --d 2 --k 5";
    const Outcome first = run(args);
    const Outcome second = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    const fs::path saved = scratch_dir() / "rt.json";
    const Outcome to_file = run(args + " --output " + saved.string());
    REQUIRE(to_file.code == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(saved) == first.out);

    // Re-project the emitted projection: same support, energy, and counters,
    // so the whole document must come back byte-identical.
    const auto doc = nlohmann::json::parse(first.out);
    std::ostringstream again;
    again << std::setprecision(17);
    for (double v : doc["projection"].get<std::vector<double>>()) again << v << "\n";
    const fs::path reinput = scratch_dir() / "rt2.txt";
    spit(reinput, again.str());
    const Outcome reprojected =
        run("project --input " + reinput.string() + " --d 2 --k 5");
    REQUIRE(reprojected.code == 0);
    CHECK(reprojected.out == first.out);
}

TEST_CASE("project rejects bad inputs with exit code 2") {
    const fs::path five = scratch_dir() / "five.txt";
    spit(five, "1\n2\n3\n4\n5\n");
    const Outcome bad_len = run("project --input " + five.string() + " --d 2 --k 2");
    CHECK(bad_len.code == 2);
    CHECK(bad_len.err.find("is not a power of 2") != std::string::npos);

    const fs::path junk = scratch_dir() / "junk.txt";
    spit(junk, "1\nnot-a-number\n3\n4\n");
    CHECK(run("project --input " + junk.string() + " --d 2 --k 2").code == 2);

    const fs::path four = scratch_dir() / "four.txt";
    spit(four, "1\n2\n3\n4\n");
    CHECK(run("project --input " + four.string() + " --d 2 --k 5").code == 2);
    CHECK(run("project --input " + four.string() + " --d 2 --k 0").code == 2);
    CHECK(run("project --input /nonexistent/x.txt --d 2 --k 2").code == 2);
}

TEST_CASE("usage errors exit with 2 and help with 0") {
    CHECK(run("").code == 2);
    CHECK(run("project").code == 2);              // missing required flags
    CHECK(run("project --nope").code == 2);
    CHECK(run("frobnicate").code == 2);
    const Outcome help = run("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("project") != std::string::npos);
    CHECK(help.out.find("bench") != std::string::npos);
}

TEST_CASE("check verifies a generated signal across a cardinality range") {
    const Outcome r = run("check --random 42 --d 2 --J 3 --k-list 1..8");
    CHECK(r.code == 0);
    CHECK(count_of(r.out, " PASS") == 8);
    CHECK(count_of(r.out, "FAIL") == 0);

    const Outcome again = run("check --random 42 --d 2 --J 3 --k-list 1..8");
    CHECK(again.out == r.out);
}

TEST_CASE("check prints the energies for a file instance") {
    const fs::path input = scratch_dir() / "check.txt";
    spit(input, "1\n2\n3\n4\n");
    const Outcome r = run("check --input " + input.string() + " --d 2 --k 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("k=3 PASS energy 21 = 21") != std::string::npos);
}

TEST_CASE("check rejects out-of-range cardinalities") {
    CHECK(run("check --random 1 --d 3 --J 2 --k 0").code == 2);
    CHECK(run("check --random 1 --d 3 --J 2 --k 10").code == 2);
    CHECK(run("check --random 1 --d 2 --k 2").code == 2);  // missing --J
    CHECK(run("check --d 2 --J 2 --k 2").code == 2);       // neither input nor seed
}

TEST_CASE("gta reports the greedy energy gap on the worked instance") {
    const fs::path input = scratch_dir() / "greedy.txt";
    spit(input, "0\n1\n4\n2\n0\n0\n5\n3\n");
    const Outcome r = run("gta --input " + input.string() + " --d 2 --k 4");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["support"] == nlohmann::json::array({1, 2, 3, 4}));
    CHECK(doc["energy"] == 21.0);
    CHECK(doc["ops"]["additions"] == 0);
    CHECK(doc["ops"]["comparisons"] == 0);
}

TEST_CASE("bench writes bound-respecting sorted records with shared per-rep seeds") {
    const fs::path csv = scratch_dir() / "bench.csv";
    const Outcome r = run("bench --d 2 --J 4 --k-list 2,4 --reps 2 --random 7 --output " +
                          csv.string());
    REQUIRE(r.code == 0);
    const std::string content = slurp(csv);
    const auto lines = split(content, '\n');
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "d,J,N,k,rep,seed,additions,comparisons,pass2_comparisons,bound,wall_time_s");

    struct Row {
        std::vector<std::string> fields;
        std::int64_t at(std::size_t i) const { return std::stoll(fields[i]); }
    };
    std::vector<Row> rows;
    for (std::size_t q = 1; q < lines.size(); ++q) {
        Row row{split(lines[q], ',')};
        REQUIRE(row.fields.size() == 11);
        rows.push_back(std::move(row));
    }
    // Sorted by (d, J, k, rep).
    CHECK(rows[0].at(3) == 2);
    CHECK(rows[0].at(4) == 0);
    CHECK(rows[1].at(3) == 2);
    CHECK(rows[1].at(4) == 1);
    CHECK(rows[2].at(3) == 4);
    CHECK(rows[3].at(3) == 4);
    for (const Row& row : rows) {
        CHECK(row.at(0) == 2);
        CHECK(row.at(1) == 4);
        CHECK(row.at(2) == 16);
        const std::int64_t bound = 3 * 4 * 16 * row.at(3) + 16;
        CHECK(row.at(9) == bound);
        CHECK(row.at(6) + row.at(7) + row.at(8) <= bound);
    }
    // One signal per repetition, reused across cardinalities.
    CHECK(rows[0].fields[5] == rows[2].fields[5]);
    CHECK(rows[1].fields[5] == rows[3].fields[5]);
    CHECK(rows[0].fields[5] != rows[1].fields[5]);

    // Counts are reproducible; only the timing column may vary.
    const Outcome again = run("bench --d 2 --J 4 --k-list 2,4 --reps 2 --random 7");
    const auto relines = split(again.out, '\n');
    REQUIRE(relines.size() >= 5);
    for (std::size_t q = 1; q <= 4; ++q) {
        const auto a = split(lines[q], ',');
        const auto b = split(relines[q], ',');
        REQUIRE(b.size() == 11);
        for (std::size_t f = 0; f < 10; ++f) CHECK(a[f] == b[f]);
    }
}
