#include <doctest.h>

#include <json.hpp>

#include "thetadim/report.hpp"

using namespace thetadim;

TEST_CASE("config text parsing") {
    InstanceSpec spec = parse_config_text(
        "# an instance\nfamily = C\nrank=2\n degree = 10 \nq_short=1\n");
    CHECK(spec.family == Family::C);
    CHECK(spec.rank == 2);
    CHECK(spec.degree == 10);
    CHECK(spec.q_short == 1);
    CHECK_FALSE(spec.kp.has_value());

    InstanceSpec gl = parse_config_text("family=GL\nrank=3\ndegree=3\nkp_p=0\nkp_q=-1\n");
    REQUIRE(gl.kp.has_value());
    CHECK(gl.kp->p == 0);
    CHECK(gl.kp->q == -1);
    CHECK_THROWS(parse_config_text("family=GL\nkp_p=0\n"));
    CHECK_THROWS(parse_config_text("nonsense=1\n"));
}

TEST_CASE("run report JSON is stable under reparse") {
    InstanceSpec spec;
    spec.family = Family::C;
    spec.rank = 2;
    spec.degree = 10;
    CoverSpec cover = build_cover(spec);
    OrbitSetting setting = make_orbit_setting(cover);
    OrbitSurvey sv = survey(setting);
    ThetaContext ctx = make_context(setting);
    DimReport rep = dim_whittaker(ctx);
    TwistSpec tw{TwistSpec::Mode::UnitTwist, 1};
    DistinguishedVerdict verdict = decide_distinguished(ctx, tw);
    std::string text = run_report_json(spec, sv, setting, rep, verdict);
    auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed.dump(2) == text);
    CHECK(parsed.at("schema").get<int>() == 1);
    CHECK(parsed.at("survey").at("lower").get<int>() == 1);
    CHECK(parsed.at("survey").at("upper").get<int>() == 3);
    // two generations are byte-identical
    CHECK(run_report_json(spec, sv, setting, rep, verdict) == text);

    std::string md = run_report_markdown(spec, sv, rep, verdict);
    CHECK(md.find("| 1 | 3 | 25 |") != std::string::npos);
}

TEST_CASE("reproduce over several workers is deterministic") {
    std::string data = default_data_dir();
    TableReport one = reproduce_tables("t-G2", data, 1);
    TableReport four = reproduce_tables("t-G2", data, 4);
    CHECK(one.failures == 0);
    CHECK(one.lines == four.lines);
}

TEST_CASE("instance labels") {
    InstanceSpec spec;
    spec.family = Family::GL;
    spec.rank = 4;
    spec.degree = 4;
    spec.kp = KPParams{0, -1};
    CHECK(spec.label() == "GL4^(4) p=0 q=-1");
}
