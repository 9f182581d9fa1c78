#include "doctest.h"
#include "fixtures.hpp"
#include "nichols_forge/commands.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/io.hpp"
#include "nichols_forge/parallel.hpp"

using namespace nf;
using fx::z;

TEST_CASE("scalar encoding") {
  CHECK(scalar_to_json(Scalar(Rational(-3, 4))).dump() == R"({"coeffs":["-3/4"],"conductor":1})");
  CHECK(scalar_to_json(z(3)).dump() == R"({"coeffs":["0","1"],"conductor":3})");
  for (const Scalar& s : {Scalar(0), Scalar(7), z(5, 3), z(12, 5) + Scalar(Rational(1, 9)), -z(8)})
    CHECK(scalar_from_json(scalar_to_json(s)) == s);
  CHECK(parse_scalar("zeta(4)^3") == z(4, 3));
  CHECK(parse_scalar("-zeta(6)") == -z(6));
  CHECK(parse_scalar(" zeta( 5 ) ^ -1 ") == z(5, 4));
  CHECK(parse_scalar("6/4") == Scalar(Rational(3, 2)));
  CHECK(parse_scalar("-2") == Scalar(-2));
  CHECK(scalar_from_json(json(3)) == Scalar(3));
  // ζ_3 written over Q(ζ_6): ζ_6^2 = ζ_6 - 1.
  CHECK(scalar_from_json(json::parse(R"({"conductor":6,"coeffs":["-1","1"]})")) == z(3));
  for (const char* bad : {"1/0", "zeta(0)", "zeta(3", "x", "", "1.5"}) CHECK_THROWS_AS(parse_scalar(bad), ParseError);
  CHECK_THROWS_AS(scalar_from_json(json::parse(R"({"conductor":0,"coeffs":["1"]})")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(json::parse("[1]")), ParseError);
}

TEST_CASE("matrix encoding") {
  Matrix m(2, 3);
  m.set(1, 2, z(3));
  m.set(0, 1, 5);
  json j = matrix_to_json(m);
  CHECK(j["entries"].size() == 2);
  CHECK(j["entries"][0][0] == 0);
  CHECK(matrix_from_json(j) == m);
  j["entries"].push_back({4, 0, "1"});
  CHECK_THROWS_AS(matrix_from_json(j), ParseError);
}

TEST_CASE("braiding files") {
  BraidingInput a = braiding_from_json(json::parse(R"J({"type":"diagonal","q":[["-1","1"],["1","zeta(3)^2"]]})J"));
  CHECK(a.braiding == DiagonalBraiding({{-1, 1}, {1, z(3, 2)}}));
  CHECK_FALSE(a.yd.has_value());
  CHECK(braiding_from_json(braiding_to_json(a.braiding)).braiding == a.braiding);

  YDDatum d{{2, 3}, {{{1, 0}, {Scalar(-1), 1}}, {{0, 1}, {1, z(3)}}}};
  BraidingInput b = braiding_from_json(braiding_to_json(d));
  REQUIRE(b.yd.has_value());
  CHECK(b.braiding == yd_to_braiding(d));
  CHECK(b.yd->group == d.group);

  for (const char* bad : {R"({"type":"diagonal","q":[["-1","1"]]})", R"({"type":"diagonal","q":[["0"]]})",
                          R"({"type":"diagonal"})", R"({"type":"weird","q":[[1]]})", R"({"q":[[1]]})",
                          R"J({"type":"yetter-drinfeld-abelian","group":[2],"points":[{"g":[1],"chi":["zeta(3)"]}]})J",
                          R"({"type":"yetter-drinfeld-abelian","group":[2],"points":[]})"})
    CHECK_THROWS_AS(braiding_from_json(json::parse(bad)), ParseError);
}

TEST_CASE("hopf structure files round-trip") {
  YDDatum d{{3}, {{{1}, {z(3)}}}};
  NicholsReport r = nichols_compute(yd_to_braiding(d), 4);
  std::vector<HopfStructure> all = {HopfStructure::trivial(LineCategory::free(fx::rank_one(2))),
                                    fx::nichols_hopf(fx::a2_minus_one(), 6), fx::group_algebra_z2(),
                                    from_nichols(r, LineCategory::yetter_drinfeld(d), LineCategory::yd_letter_labels(d))};
  for (const auto& t : all) {
    json j = hopf_to_json(t);
    HopfStructure u = hopf_from_json(j);
    CHECK(u == t);
    CHECK(u.grading == t.grading);
    CHECK(hopf_to_json(u).dump() == j.dump());
  }
}

TEST_CASE("hopf structure files are validated") {
  json good = hopf_to_json(fx::nichols_hopf(fx::rank_one(3), 3));
  auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["mul"][0][2] = 2; })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["mul"][0][3] = 9; })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["isotypes"][0]["dim"] = 0; })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { std::swap(j["isotypes"][0], j["isotypes"][1]); })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["grading"] = {0, 1}; })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j.erase("antipode"); })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["mul"].push_back(j["mul"][0]); })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["isotypes"].erase(0); })), ParseError);
  CHECK_THROWS_AS(hopf_from_json(broken([](json& j) { j["format"] = "nichols-forge/fusion"; })), ParseError);
}

TEST_CASE("fusion data files round-trip") {
  for (const auto& g : std::vector<std::vector<int>>{{}, {2}, {3}, {2, 2}}) {
    FusionData f = pointed_center_data(g);
    json j = fusion_to_json(f);
    FusionData u = fusion_from_json(j);
    CHECK(fusion_to_json(u).dump() == j.dump());
    CHECK(verify_fusion(u).pass());
  }
  json j = fusion_to_json(pointed_center_data({2}));
  j["alpha"].push_back({0, 0, 0, 0, 0, 0, 5, 0, "1"});
  CHECK_THROWS_AS(fusion_from_json(j), ParseError);
  j = fusion_to_json(pointed_center_data({2}));
  j["dual"] = {0, 1};
  CHECK_THROWS_AS(fusion_from_json(j), ParseError);
}

TEST_CASE("commands") {
  RunReport n = cmd_nichols(R"({"type":"diagonal","q":[["-1","1"],["1","-1"]]})", {4, std::nullopt});
  CHECK(n.status == 0);
  CHECK(n.results["total"] == 4);
  CHECK(n.results["hilbert_series"] == json({1, 2, 1}));
  CHECK(n.results["oracle_agrees"] == true);
  REQUIRE(n.emitted.has_value());

  RunReport v = cmd_verify(n.emitted->dump());
  CHECK(v.status == 0);
  CHECK(v.results["pass"] == true);

  RunReport g = cmd_gr(n.emitted->dump(), FiltrationKind::Radical);
  CHECK(g.status == 0);
  CHECK(g.results["isomorphic_to_input"] == true);
  REQUIRE(g.emitted.has_value());
  CHECK(cmd_verify(g.emitted->dump()).status == 0);

  RunReport d = cmd_degenerate(n.emitted->dump(), FiltrationKind::Coradical, {Scalar(1), Scalar(Rational(1, 2)), z(3)});
  CHECK(d.status == 0);
  CHECK(d.results["path_dims"] == json({2, 2, 2}));
  CHECK(d.results["limit_equals_associated_graded"] == true);
  CHECK_THROWS_AS(cmd_degenerate(n.emitted->dump(), FiltrationKind::Radical, {Scalar(0)}), InvalidParameter);

  RunReport i = cmd_is_nichols(n.emitted->dump());
  CHECK(i.status == 0);
  CHECK(i.results["verdict"] == "nichols");

  std::string grp = hopf_to_json(fx::group_algebra_z2()).dump();
  CHECK(cmd_verify(grp).status == 1);
  RunReport e = cmd_gr(grp, FiltrationKind::Radical);
  CHECK(e.status == 1);
  CHECK(e.results["error"]["kind"] == "not-ccc");
  CHECK(cmd_is_nichols(grp).status == 1);

  RunReport q1 = cmd_nichols(R"({"type":"diagonal","q":[["1"]]})", {3, std::nullopt});
  CHECK(q1.status == 0);
  CHECK(q1.results["termination"] == "undetermined-at-cutoff");
  CHECK_FALSE(q1.emitted.has_value());
  CHECK_THROWS_AS(cmd_nichols(R"({"type":"diagonal","q":[["-1"]]})", {1, std::nullopt}), InvalidParameter);
  CHECK_THROWS_AS(cmd_verify("{"), ParseError);

  RunReport f = cmd_fusion_gen({3});
  CHECK(f.status == 0);
  REQUIRE(f.emitted.has_value());
  CHECK(cmd_fusion_verify(f.emitted->dump()).status == 0);
}

TEST_CASE("reports are deterministic across thread counts") {
  auto run = [] {
    std::string s;
    RunReport n = cmd_nichols(R"({"type":"diagonal","q":[["-1","-1"],["1","-1"]]})", {6, 5});
    s += n.to_json().dump() + n.emitted->dump();
    s += cmd_gr(n.emitted->dump(), FiltrationKind::Coradical).to_json().dump();
    s += cmd_fusion_gen({2, 2}).to_json().dump();
    return s;
  };
  set_thread_count(1);
  std::string one = run();
  set_thread_count(4);
  std::string four = run();
  set_thread_count(1);
  CHECK(one == four);
  CHECK(one.find("timing") == std::string::npos);
}
