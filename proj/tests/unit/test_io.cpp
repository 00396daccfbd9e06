#include <doctest.h>

#include <cmath>

#include "lorentz/io.hpp"
#include "lorentz/random.hpp"

using namespace lorentz;
using nlohmann::json;

namespace {

std::string field_of(const std::string& text) {
    try {
        parse_function(text);
    } catch (const InputError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("step JSON loads and canonicalizes") {
    AnyFunction f = parse_function(R"({"kind":"step","pieces":[{"a":1,"b":2,"value":2},{"a":0,"b":1,"value":2}]})");
    const auto& st = std::get<StepFunction>(f);
    REQUIRE(st.size() == 1);
    CHECK(st.pieces()[0].b == 2.0);
    // kind defaults to step.
    CHECK(std::holds_alternative<StepFunction>(parse_function(R"({"pieces":[]})")));
}

TEST_CASE("monomial JSON") {
    AnyFunction f =
        parse_function(R"({"kind":"monomial","pieces":[{"a":0,"b":1,"coeff":0.6666666666666666,"beta":0.3333333333333333}]})");
    const auto& m = std::get<MonomialFunction>(f);
    CHECK(m.pieces()[0].beta == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(require_step(f, "dual"), InputError);
    AnyFunction flat = parse_function(R"({"kind":"monomial","pieces":[{"a":0,"b":1,"coeff":2,"beta":0}]})");
    CHECK(require_step(flat, "dual") == StepFunction::indicator(0, 1, 2));
}

TEST_CASE("errors name the field") {
    CHECK(field_of(R"({"pieces":[{"a":0,"b":1,"value":1},{"a":1,"b":2,"value":-1}]})") == "pieces[1].value");
    CHECK(field_of(R"({"pieces":[{"a":0,"b":1}]})") == "pieces[0].value");
    CHECK(field_of(R"({"pieces":[{"a":0,"b":1,"value":"x"}]})") == "pieces[0].value");
    CHECK(field_of(R"({"pieces":[{"a":2,"b":1,"value":1}]})") == "pieces[0].b");
    CHECK(field_of(R"({"kind":"cubic","pieces":[]})") == "kind");
    CHECK(field_of(R"({"kind":"step"})") == "pieces");
    CHECK(field_of(R"({"pieces":{}})") == "pieces");
    CHECK(field_of("[1,2]") == "$");
    CHECK(field_of(R"({"pieces":[)") == "$");
    CHECK_THROWS_AS(load_function("/nonexistent/file.json"), InputError);
}

TEST_CASE("round trip through JSON is exact") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        CorpusOptions o;
        o.allow_gaps = seed % 2 == 0;
        StepFunction f = random_step(rng, o);
        std::string text = to_json(f).dump();
        CHECK(std::get<StepFunction>(parse_function(text)) == f);
    }
    MonomialFunction m({{0, 1, 2.0 / 3.0, 1.0 / 3.0}, {1, 2, 0.1, 0}});
    CHECK(std::get<MonomialFunction>(parse_function(to_json(m).dump())).pieces() == m.pieces());
}

TEST_CASE("infinity serializes as a string") {
    CHECK(number_json(kInfinity) == json("inf"));
    CHECK(number_json(2.5) == json(2.5));
}

TEST_CASE("result serialization") {
    StepFunction two({{0, 1, 2}, {1, 2, 1}});
    json d = to_json(dual_norm(two, Exponents::make(2, kInfinity)));
    CHECK(d["branch"] == "sup_s_infinity");
    CHECK(d["witness"].is_null());
    CHECK(d["value"].get<double>() == doctest::Approx(1.0606601717798212));

    json n = to_json(lorentz_norm(two, Exponents::make(2, 4)));
    CHECK(n["method"] == "closed_form");
    CHECK(n.contains("err"));

    json l = to_json(level_function(two, 0.5));
    CHECK(l["intervals"].size() == 1);
    CHECK(l["slopes"][0].get<double>() == doctest::Approx(3 * std::sqrt(2.0) / 4));

    DecompositionCertificate c = epsilon_decomposition(StepFunction::indicator(0, 1), Exponents::make(2, 4), 0.1);
    json cj = to_json(c);
    CHECK(cj["parts"].size() == c.part_count());
    CHECK(cj["multiplicities"].size() == c.part_count());
    CHECK_FALSE(to_json(c, false).contains("parts"));
}
