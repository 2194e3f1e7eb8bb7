#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/classify.hpp"
#include "germforge/cli.hpp"
#include "germforge/errors.hpp"
#include "germforge/expr.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace germforge;

namespace {

const TruncBound B = total_degree(16);

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

ExprPtr random_expr(Rng& rng, int depth) {
    const int pick = depth <= 0 ? rng.range(0, 2) : rng.range(0, 6);
    switch (pick) {
    case 0: return expr_number(rat(rng.range(-9, 9), rng.range(1, 9)));
    case 1: return expr_var_xi();
    case 2: return expr_var_t();
    case 3: return expr_binary(ExprNode::Kind::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return expr_binary(ExprNode::Kind::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return expr_binary(ExprNode::Kind::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return expr_pow(random_expr(rng, depth - 1), rng.range(0, 4));
    }
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct CaptureOut {
    std::stringstream buffer;
    std::streambuf* old;
    CaptureOut() : old(std::cout.rdbuf(buffer.rdbuf())) {}
    ~CaptureOut() { std::cout.rdbuf(old); }
};

} // namespace

TEST_CASE("grammar examples") {
    const FamilyExpr fe = parse_family("xi + t ; t^2*(t+xi) + t^5 + t^6");
    const MapGerm f = family_germ(fe, B);
    CHECK(f.p == Series2::xi(B) + Series2::t(B));
    CHECK(f.q.coeff(0, 3) == Rat(1));
    CHECK(f.q.coeff(1, 2) == Rat(1));
    CHECK(f.q.coeff(0, 5) == Rat(1));
    CHECK(f.q.coeff(0, 6) == Rat(1));

    CHECK_NOTHROW(parse_family("xi ; t"));

    try {
        parse_family("xi + ; t");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 6);
    }

    CHECK_THROWS_AS(parse_family("xi ; t^(2)"), ParseError);   // exponent must be a natural
    CHECK_THROWS_AS(parse_family("xi ; 1/0"), ParseError);     // zero denominator
    CHECK_THROWS_AS(parse_family("xi t ; t"), ParseError);     // no implicit multiplication
    CHECK_THROWS_AS(parse_family("x ; t"), ParseError);
}

TEST_CASE("render/parse round trip on random ASTs") {
    Rng rng(99);
    for (int it = 0; it < 200; ++it) {
        const ExprPtr e = random_expr(rng, 4);
        const std::string text = expr_render(e);
        CAPTURE(text);
        const ExprPtr back = parse_expression(text);
        CHECK(expr_equal(e, back));
    }
}

TEST_CASE("series rendering round-trips through the grammar") {
    Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        Series2 s = Series2::zero(B);
        for (int k = 0; k < 5; ++k)
            s = s + Series2::monomial(rat(rng.range(-4, 4), rng.range(1, 4)), rng.range(0, 4),
                                      rng.range(0, 4), B);
        const ExprPtr back = parse_expression(s.str());
        CHECK(expr_eval(back, B) == s);
    }
}

TEST_CASE("normal-form and classify round-trip over the catalog names") {
    for (const char* name : {"I", "II", "S1,1", "S1,2", "S1,3", "T1", "T2", "T3", "S2,2",
                             "S2,3+", "S2,3-", "S2,4"}) {
        const SingularityClass cls = *SingularityClass::parse(name);
        const std::string text = normal_form_text(cls);
        const auto at = text.find(';');
        REQUIRE(at != std::string::npos);
        const FamilyExpr fe = parse_family(text);
        const MapGerm f = family_germ(fe, B);
        const auto rep = classify(require_tangential(f, 10), 14);
        CHECK(rep.cls == cls);
    }
}

TEST_CASE("cli: classify examples and exit codes") {
    {
        CaptureOut cap;
        const int rc = run_cli({"classify", "--family", "xi + t ; t^3 + t^2*(t+xi)^2"});
        CHECK(rc == 0);
        CHECK(cap.buffer.str().find("class: T1") != std::string::npos);
    }
    {
        CaptureOut cap;
        const int rc = run_cli({"classify", "--family", "xi ; t^2"});
        CHECK(rc == 3);
    }
    {
        CaptureOut cap;
        const int rc = run_cli({"classify", "--family", "xi + ; t"});
        CHECK(rc == 2);
    }
    {
        CaptureOut cap;
        const int rc = run_cli({"adjacency", "--from", "T3", "--to", "II"});
        CHECK(rc == 0);
        CHECK(cap.buffer.str() == "true\n");
    }
}

TEST_CASE("cli: deterministic artifacts") {
    const std::string svg1 = "/tmp/germforge_test1.svg";
    const std::string svg2 = "/tmp/germforge_test2.svg";
    const std::string jsonPath = "/tmp/germforge_test.json";
    {
        CaptureOut cap;
        CHECK(run_cli({"envelope", "--family", "xi + t ; t^2*xi", "--svg", svg1, "--res", "64",
                       "--json", jsonPath}) == 0);
        CHECK(run_cli({"envelope", "--family", "xi + t ; t^2*xi", "--svg", svg2, "--res", "64"}) ==
              0);
    }
    CHECK(slurp(svg1) == slurp(svg2));
    CHECK(!slurp(jsonPath).empty());
    std::remove(svg1.c_str());
    std::remove(svg2.c_str());
    std::remove(jsonPath.c_str());
}

TEST_CASE("cli: normal-form text matches the catalog") {
    CaptureOut cap;
    CHECK(run_cli({"normal-form", "--class", "S1,2"}) == 0);
    const std::string out = cap.buffer.str();
    CHECK(out.find("xi + t ; t^2*(t+xi) + t^4 + t^7") != std::string::npos);
    CHECK(out.find("t^3") != std::string::npos);
    CHECK(out.find("t^5") != std::string::npos);
}

TEST_CASE("cli: stable json schema for classification reports") {
    const std::string path = "/tmp/germforge_schema.json";
    {
        CaptureOut cap;
        CHECK(run_cli({"classify", "--family", "xi + t ; t^2*(t+xi) + t^4 + t^7", "--json",
                       path}) == 0);
    }
    std::ifstream is(path);
    nlohmann::json j;
    is >> j;
    CHECK(j["class"] == "S1,2");
    CHECK(j["c"] == 3);
    CHECK(j["tau"] == 2);
    CHECK(j["simple"] == true);
    CHECK(j["alpha"].is_string());
    CHECK(j["k"].is_array());
    CHECK(j["k"][0].is_string());
    CHECK(j["certifiedToJet"].is_number_integer());
    REQUIRE(j["envelope"]["branches"].is_array());
    CHECK(j["envelope"]["branches"][0]["p"] == 7);
    CHECK(j["envelope"]["branches"][0]["q"] == 2);
    std::remove(path.c_str());

    // cross ratio serializes as [re, im]
    const std::string upath = "/tmp/germforge_u.json";
    {
        CaptureOut cap;
        CHECK(run_cli({"classify", "--family", "xi ; 1/4*t^4 + 5/6*t^3*xi + 1/2*t^2*xi^2",
                       "--reduced", "--json", upath}) == 0);
    }
    std::ifstream uis(upath);
    nlohmann::json uj;
    uis >> uj;
    CHECK(uj["class"] == "U");
    REQUIRE(uj["crossRatio"].is_array());
    CHECK(std::abs(uj["crossRatio"][0].get<double>() - 4.0) < 1e-9);
    CHECK(std::abs(uj["crossRatio"][1].get<double>()) < 1e-12);
    std::remove(upath.c_str());
}

TEST_CASE("cli: criminant branch schema in envelope reports") {
    const std::string path = "/tmp/germforge_env.json";
    {
        CaptureOut cap;
        CHECK(run_cli({"envelope", "--family", "xi + t ; t^2*xi", "--json", path}) == 0);
    }
    std::ifstream is(path);
    nlohmann::json j;
    is >> j;
    REQUIRE(j["criminantBranches"].is_array());
    REQUIRE(j["criminantBranches"].size() == 1);
    CHECK(j["criminantBranches"][0]["ramification"] == 1);
    CHECK(j["criminantBranches"][0]["field"] == "real");
    CHECK(j["criminantBranches"][0]["terms"][0]["exp"] == "1");
    CHECK(j["criminantBranches"][0]["terms"][0]["coeff"] == "2");
    std::remove(path.c_str());
}

TEST_CASE("cli: truncation override via the environment") {
    setenv("GERMFORGE_MAX_JET", "20", 1);
    CaptureOut cap;
    CHECK(run_cli({"classify", "--family", "xi + t ; t^2*(t+xi) + t^4"}) == 0);
    unsetenv("GERMFORGE_MAX_JET");
    // at truncation 20 the undecidable subindex is certified to jet 18
    CHECK(cap.buffer.str().find("class: S1,inf") != std::string::npos);
    CHECK(cap.buffer.str().find("jet order 18") != std::string::npos);
}

TEST_CASE("cli: reduced presentations need the explicit flag") {
    CaptureOut cap;
    const std::string fam = "xi ; 1/4*t^4 + 4/3*t^3*xi + 1/2*t^2*xi^2";
    CHECK(run_cli({"classify", "--family", fam}) == 3);
    const int rc = run_cli({"classify", "--family", fam, "--reduced"});
    CHECK(rc == 0);
    CHECK(cap.buffer.str().find("class: U") != std::string::npos);
}
