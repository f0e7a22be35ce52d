#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const std::string kBin = GERMFORGE_BIN;

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "germforge_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kEx47 = "'f(x,y) = (x, y^2, y^3, x^3*y + t*x^2*y)'";
const char* kTrefoil = "'f(x,y) = (x^2-y^2, 2*x*y, x^3-3*x*y^2, 3*x^2*y-y^3)'";
const char* kUnknot = "'f(x,y) = (x, y, 0, 0)'";

} // namespace

TEST_CASE("analyze runs are byte-identical for a fixed seed") {
    fs::path a = scratch_dir() / "an_a.json";
    fs::path b = scratch_dir() / "an_b.json";
    std::string base = std::string("analyze --map ") + kEx47 +
                       " --t 1 --seed 7 --starts 8 --radii 0.2:0.7:8 --out ";
    REQUIRE(run(base + a.string()) == 0);
    REQUIRE(run(base + b.string()) == 0);
    std::string sa = slurp(a), sb = slurp(b);
    CHECK(!sa.empty());
    CHECK(sa == sb);

    Json j = Json::parse(sa);
    CHECK(j["schema"] == 1);
    CHECK(j["corank"]["value"] == 1);
    CHECK(j["meta"]["seed"] == 7);
}

TEST_CASE("GERMFORGE_SEED is the fallback for --seed") {
    fs::path a = scratch_dir() / "env_a.json";
    fs::path b = scratch_dir() / "env_b.json";
    std::string tail = std::string(" analyze --map ") + kEx47 +
                       " --t 1 --starts 8 --radii 0.2:0.7:8 --out ";
    std::string env_cmd = "GERMFORGE_SEED=7 " + kBin + tail + a.string() + " > /dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
    REQUIRE(run(std::string("analyze --map ") + kEx47 +
                " --t 1 --seed 7 --starts 8 --radii 0.2:0.7:8 --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("delta subcommand reports the exact dimension") {
    fs::path out = scratch_dir() / "delta.json";
    REQUIRE(run(std::string("delta --map ") +
                "'f(x,y) = (x, y^2, y*(x^2+y^2), y*(x^4+y^6+t*y^2))' --t 1 --out " +
                out.string()) == 0);
    Json j = Json::parse(slurp(out));
    CHECK(j["delta"]["status"] == "finite");
    CHECK(j["delta"]["dim"]["value"] == 2);
    CHECK(j["delta"]["dim"]["certification"] == "exact");
}

TEST_CASE("parse and germ errors exit nonzero") {
    CHECK(run("analyze --map 'f(x,y) = (x, w)'") == 1);
    CHECK(run("analyze --map 'f(x,y) = (x, y + 1)'") == 1);
    CHECK(run("analyze") != 0);          // missing --map
    CHECK(run("analyze --map 'f(x,y) = (x, y, 0, 0)' --radii bogus") == 1);
}

TEST_CASE("compare distinguishes trefoil from unknot") {
    fs::path tre = scratch_dir() / "tre.json";
    fs::path unk = scratch_dir() / "unk.json";
    fs::path svg = scratch_dir() / "tre.svg";
    REQUIRE(run(std::string("link --map ") + kTrefoil + " --epsilon 0.3 --seed 7 --svg " +
                svg.string() + " --out " + tre.string()) == 0);
    REQUIRE(run(std::string("link --map ") + kUnknot + " --epsilon 0.5 --seed 7 --out " +
                unk.string()) == 0);

    Json jt = Json::parse(slurp(tre));
    CHECK(jt["link"]["alexander"]["value"] == "t^2 - t + 1");
    CHECK(slurp(svg).find("<svg") != std::string::npos);

    fs::path cmp = scratch_dir() / "cmp.json";
    REQUIRE(run("compare --a " + tre.string() + " --b " + unk.string() + " --out " +
                cmp.string()) == 0);
    Json jc = Json::parse(slurp(cmp));
    CHECK(jc["verdict"] == "distinguished");
    CHECK(jc["invariant"] == "alexander");

    REQUIRE(run("compare --a " + tre.string() + " --b " + tre.string() + " --out " +
                cmp.string()) == 0);
    Json jd = Json::parse(slurp(cmp));
    CHECK(jd["verdict"] == "consistent");
    CHECK(jd["invariant"].is_null());
}

TEST_CASE("non-(2,4) link request reports an error without failing") {
    fs::path out = scratch_dir() / "badlink.json";
    REQUIRE(run(std::string("link --map 'f(x,y) = (x, y, 0)' --out ") + out.string()) == 0);
    Json j = Json::parse(slurp(out));
    CHECK(j.contains("error"));
}
