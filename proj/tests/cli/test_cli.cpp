#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using lorentz::cli::Format;
using lorentz::cli::RunConfig;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(RunConfig c) {
    std::ostringstream out, err;
    int code = lorentz::cli::run(c, out, err);
    return {code, out.str(), err.str()};
}

RunConfig cmd(const std::string& name, const std::string& p = "2", const std::string& s = "4") {
    RunConfig c;
    c.command = name;
    c.p = p;
    c.s = s;
    return c;
}

std::string data(const char* file) { return std::string(EXAMPLES_DIR) + "/" + file; }

}  // namespace

TEST_CASE("constants row") {
    Outcome o = run(cmd("constants"));
    CHECK(o.code == 0);
    CHECK(o.out ==
          "p,s,p_prime,s_prime,alpha,c_ps,char_norm,char_dual\n"
          "2.000000,4.000000,2.000000,1.333333,0.333333,1.139754,0.840896,0.737788\n");
}

TEST_CASE("constants grid") {
    Outcome o = run(cmd("constants", "1.5,2,4", "2,4,inf"));
    CHECK(o.code == 0);
    CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 10);
    CHECK(o.out.find("2.000000,inf,2.000000,1.000000,0.500000,2.000000,1.000000,0.500000") != std::string::npos);
    CHECK(o.out.find("4.000000,4.000000,1.333333,1.333333,0.000000,1.000000") != std::string::npos);

    RunConfig j = cmd("constants", "2", "inf");
    j.format = Format::json;
    json arr = json::parse(run(j).out);
    CHECK(arr[0]["s"] == "inf");
    CHECK(arr[0]["c_ps"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("dual of the two-step file") {
    RunConfig c = cmd("dual", "2", "inf");
    c.input_path = data("twostep.json");
    Outcome o = run(c);
    REQUIRE(o.code == 0);
    json j = json::parse(o.out);
    CHECK(j["branch"] == "sup_s_infinity");
    CHECK(j["value"].get<double>() == doctest::Approx(1.060660).epsilon(1e-6));
    c.format = Format::csv;
    CHECK(run(c).out == "p,s,value,branch\n2.000000,inf,1.060660,sup_s_infinity\n");
}

TEST_CASE("norm and level") {
    RunConfig n = cmd("norm", "2", "inf");
    n.input_path = data("twostep.json");
    json j = json::parse(run(n).out);
    CHECK(j["norm"]["value"].get<double>() == doctest::Approx(2.0));
    CHECK(j["norm"]["method"] == "supremum");
    CHECK(j["maximal_norm"]["value"].get<double>() == doctest::Approx(2.121320).epsilon(1e-6));

    RunConfig l = cmd("level", "2", "inf");
    l.input_path = data("twostep.json");
    l.format = Format::csv;
    CHECK(run(l).out == "k,a,b,slope\n0,0.000000,2.000000,1.060660\n");
}

TEST_CASE("decompose") {
    RunConfig c = cmd("decompose");
    c.input_path = data("indicator.json");
    c.epsilon = 0.1;
    Outcome o = run(c);
    CHECK(o.code == 0);
    json j = json::parse(o.out);
    CHECK(j["lower"].get<double>() == doctest::Approx(0.737788).epsilon(1e-6));
    CHECK(j["upper"].get<double>() <= 0.737788 + 0.4);
    CHECK(j["checks"]["cover"] == true);
    CHECK(j["checks"]["permutation"] == true);
    CHECK(j.contains("parts"));

    RunConfig bad = cmd("decompose", "4", "2");
    bad.input_path = data("indicator.json");
    Outcome b = run(bad);
    CHECK(b.code == 2);
    CHECK(b.err.find("--s") != std::string::npos);
}

TEST_CASE("verify is deterministic") {
    RunConfig c = cmd("verify");
    c.trials = 10;
    c.seed = 42;
    Outcome a = run(c), b = run(c);
    CHECK((a.code == 0 || a.code == 1));
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.out.size() > 100);
}

TEST_CASE("verify --list") {
    RunConfig c = cmd("verify");
    c.list = true;
    c.format = Format::csv;
    Outcome o = run(c);
    CHECK(o.code == 0);
    CHECK(o.out.rfind("property,module,statement\n", 0) == 0);
    CHECK(o.out.find("column_shuffle,decomposition") != std::string::npos);
    CHECK(o.out.find("maximal_norm_bracket,norms") != std::string::npos);
}

TEST_CASE("input errors exit 2 with the field") {
    RunConfig c = cmd("dual");
    c.input_path = data("bad_value.json");
    Outcome o = run(c);
    CHECK(o.code == 2);
    CHECK(o.out.empty());
    CHECK(o.err == "error: pieces[1].value: must be >= 0\n");

    RunConfig missing = cmd("dual");
    CHECK(run(missing).code == 2);
    missing.input_path = data("nope.json");
    CHECK(run(missing).err.find("file") != std::string::npos);

    CHECK(run(cmd("bogus")).code == 2);
    CHECK(run(cmd("constants", "0.5")).err.find("--p") != std::string::npos);
    CHECK(run(cmd("constants", "2", "abc")).code == 2);

    RunConfig t = cmd("verify");
    t.trials = 0;
    CHECK(run(t).code == 2);
}

TEST_CASE("output file") {
    RunConfig c = cmd("constants");
    std::string path = (std::filesystem::temp_directory_path() / "lorentz_cli_constants.csv").string();
    c.output_path = path;
    Outcome o = run(c);
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("1.139754") != std::string::npos);
    std::remove(path.c_str());
}
