#include "qeuclid/export.hpp"
#include "qeuclid/report.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace qeuclid;

TEST_CASE("gamma option parsing")
{
    auto gc = parse_gamma_choice("gamma0=2*default, gammabar1=i*q^-1,glued");
    CHECK(gc.glued);
    CHECK_FALSE(gc.strict);
    CHECK(gc.scale.at(0) == Scalar(2));
    SymbolicField f;
    CHECK(gc.bar_value.at(1) == Scalar(Gauss::i()) * f.q_pow(-1));
    CHECK(parse_gamma_choice("").strict);
    CHECK_THROWS_AS(parse_gamma_choice("gamma0"), ConfigError);
    CHECK_THROWS_AS(parse_gamma_choice("delta1=2"), ConfigError);
    CHECK_THROWS_AS(parse_gamma_choice("gammax=2"), ConfigError);
}

TEST_CASE("config validation")
{
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    c.Ns = {6};
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("--mode numeric"), ConfigError);
    c.force = true;
    CHECK_NOTHROW(validate(c));
    c = RunConfig{};
    c.Ns = {2};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.mode = Mode::numeric;
    c.samples = 0;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("--samples"), ConfigError);
    c = RunConfig{};
    c.only = {"no-such-identity"};
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("--only"), ConfigError);
    c = RunConfig{};
    c.Ns = {4};
    c.gamma = "gamma0=2";
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("--gamma"), ConfigError);
}

TEST_CASE("sample points")
{
    auto a = sample_points(5, 42);
    CHECK(a == sample_points(5, 42));
    CHECK(a != sample_points(5, 43));
    for (const auto& p : a) {
        CHECK(p.im() == 0);
        CHECK(p.re() > 1);
        CHECK(p.re() <= 3);
    }
}

TEST_CASE("suite at N = 3")
{
    RunConfig c;
    auto rep = run_suite(c);
    CHECK(rep.green());
    CHECK(rep.failed() == 0);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["summary"]["green"] == true);
    CHECK(j["records"].size() == rep.records.size());
    for (const auto& r : rep.records) {
        const auto& names = identity_names();
        CHECK(std::find(names.begin(), names.end(), r.identity) != names.end());
    }

    c.gamma = "gamma0=2*default";
    auto bad = run_suite(c);
    CHECK_FALSE(bad.green());
    bool seen = false;
    for (const auto& r : bad.records) {
        if (r.identity == "gamma-constraints" && r.calculus == "unbarred") {
            seen = true;
            CHECK_FALSE(r.pass);
            REQUIRE(r.witness.has_value());
            CHECK(r.witness->find("gamma0") != std::string::npos);
        }
    }
    CHECK(seen);
}

TEST_CASE("numeric reports are reproducible")
{
    RunConfig c;
    c.Ns = {4};
    c.mode = Mode::numeric;
    c.samples = 2;
    c.seed = 9;
    c.only = {"RLL", "frame-duality"};
    c.threads = 3;
    auto a = run_suite(c).to_json();
    c.threads = 1;
    CHECK(a == run_suite(c).to_json());
    c.seed = 10;
    CHECK(a != run_suite(c).to_json());
}

TEST_CASE("negative controls are opt in")
{
    RunConfig c;
    c.only = {"nc-"};
    CHECK(run_suite(c).records.empty());
    c.negative_controls = true;
    auto rep = run_suite(c);
    REQUIRE_FALSE(rep.records.empty());
    for (const auto& r : rep.records) {
        CHECK(r.negative_control);
        CHECK_FALSE(r.pass);
    }
    CHECK(rep.green());
}

TEST_CASE("export round trip")
{
    std::vector<CalculusKind> both{CalculusKind::unbarred, CalculusKind::barred};
    for (int N : {3, 4}) {
        for (const auto& k : export_kinds()) {
            CAPTURE(N);
            CAPTURE(k);
            auto text = export_json(N, k, both);
            CHECK_FALSE(check_roundtrip(text).has_value());
        }
    }
    auto rhat = nlohmann::json::parse(export_json(3, "rhat", both));
    for (const auto& e : rhat["entries"]) {
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(e[i].get<int>()) <= 1);
        }
    }
    auto lam = nlohmann::json::parse(export_json(4, "lambda", both));
    REQUIRE(lam["families"].size() == 2);
    for (const auto& fam : lam["families"]) {
        CHECK(fam["entries"].size() == 4);
        CHECK(fam["entries"]["1"].get<std::string>().find("K") != std::string::npos);
    }
    // a doctored entry is caught
    auto theta = nlohmann::json::parse(export_json(3, "theta", both));
    theta["families"][0]["entries"]["1"]["1"] = "2";
    CHECK(check_roundtrip(theta.dump()).has_value());
    CHECK_THROWS_AS(export_json(3, "nothing", both), std::invalid_argument);
}
