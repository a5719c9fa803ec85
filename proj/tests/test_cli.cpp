#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SFX_CLI_PATH;
const fs::path kScratch = SFX_SCRATCH_DIR;

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run(const std::string& args) {
    std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const char* kValidSpace = R"({"labels": ["a", "b", "c"],
  "d": [["0/1","1/2","3/4"],["1/2","0/1","1/4"],["3/4","1/4","0/1"]],
  "unit_bounded": true})";

const char* kTriangleViolation = R"({"labels": ["x1", "x2", "x3"],
  "d": [["0/1","1/4","1/1"],["1/4","0/1","1/4"],["1/1","1/4","0/1"]],
  "unit_bounded": true})";

const char* kMalformed = R"({"labels": ["a", "b"],
  "d": [["0/1","1/0"],["1/0","0/1"]]})";

} // namespace

TEST_CASE("validate exit codes") {
    write_file(kScratch / "valid.json", kValidSpace);
    write_file(kScratch / "triangle.json", kTriangleViolation);
    write_file(kScratch / "malformed.json", kMalformed);

    CHECK(run("validate " + (kScratch / "valid.json").string()) == 0);
    CHECK(run("validate " + (kScratch / "triangle.json").string()) == 2);
    CHECK(run("validate " + (kScratch / "malformed.json").string()) == 3);
    CHECK(run("validate " + (kScratch / "missing.json").string()) == 3);
}

TEST_CASE("validate names the offending triple") {
    write_file(kScratch / "triangle.json", kTriangleViolation);
    fs::path out = kScratch / "triangle_report.json";
    run("validate " + (kScratch / "triangle.json").string() + " --out " + out.string());
    std::string report = read_file(out);
    CHECK(report.find("x1") != std::string::npos);
    CHECK(report.find("x3") != std::string::npos);
}

TEST_CASE("build is byte-deterministic") {
    write_file(kScratch / "valid.json", kValidSpace);
    fs::path out1 = kScratch / "phi1.json";
    fs::path out2 = kScratch / "phi2.json";
    std::string base = "build " + (kScratch / "valid.json").string() +
                       " --kind phi --widths 1/2,1/4 --depth 4";
    CHECK(run(base + " --out " + out1.string()) == 0);
    CHECK(run(base + " --out " + out2.string()) == 0);
    std::string a = read_file(out1), b = read_file(out2);
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("build sext emits the distance-stage polytope") {
    write_file(kScratch / "pair.json",
               R"({"labels": ["a", "b"], "d": [["0/1","1/1"],["1/1","0/1"]]})");
    fs::path out = kScratch / "sext.json";
    CHECK(run("build " + (kScratch / "pair.json").string() + " --kind sext --out " +
              out.string()) == 0);
    std::string stage = read_file(out);
    CHECK(stage.find("\"polytope\"") != std::string::npos);
    CHECK(stage.find("\"0/1\"") != std::string::npos);
    CHECK(stage.find("\"1/1\"") != std::string::npos);
}

TEST_CASE("verify suites pass and reports are byte-identical") {
    fs::path out1 = kScratch / "verify1.json";
    fs::path out2 = kScratch / "verify2.json";
    CHECK(run("verify --suite geometry --seed 5 --out " + out1.string()) == 0);
    CHECK(run("verify --suite geometry --seed 5 --out " + out2.string()) == 0);
    CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("verify flags a corrupted polytope file") {
    write_file(kScratch / "bad_poly.json",
               R"({"dim": 1, "vertices": [["3/2"]], "labels": ["v1"]})");
    CHECK(run("verify " + (kScratch / "bad_poly.json").string() + " --suite geometry") == 2);
}

TEST_CASE("roundtrip guard and comparison") {
    write_file(kScratch / "valid.json", kValidSpace);
    CHECK(run("roundtrip " + (kScratch / "valid.json").string() + " --widths 1/2,1/4") == 0);

    // Non-isometric comparison reports a mismatch but exits 0.
    write_file(kScratch / "pairhalf.json",
               R"({"labels": ["a", "b"], "d": [["0/1","1/2"],["1/2","0/1"]]})");
    write_file(kScratch / "pairthird.json",
               R"({"labels": ["a", "b"], "d": [["0/1","1/3"],["1/3","0/1"]]})");
    fs::path out = kScratch / "compare.json";
    CHECK(run("roundtrip " + (kScratch / "pairhalf.json").string() + " --compare " +
              (kScratch / "pairthird.json").string() + " --widths 1/2,1/4 --out " +
              out.string()) == 0);
    std::string report = read_file(out);
    CHECK(report.find("\"match\": false") != std::string::npos);

    write_file(kScratch / "seven.json", R"({"labels": ["a","b","c","d","e","f","g"],
      "d": [["0/1","1/2","1/2","1/2","1/2","1/2","1/2"],
            ["1/2","0/1","1/2","1/2","1/2","1/2","1/2"],
            ["1/2","1/2","0/1","1/2","1/2","1/2","1/2"],
            ["1/2","1/2","1/2","0/1","1/2","1/2","1/2"],
            ["1/2","1/2","1/2","1/2","0/1","1/2","1/2"],
            ["1/2","1/2","1/2","1/2","1/2","0/1","1/2"],
            ["1/2","1/2","1/2","1/2","1/2","1/2","0/1"]]})");
    CHECK(run("roundtrip " + (kScratch / "seven.json").string()) == 4);
}
