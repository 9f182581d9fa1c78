#include <chrono>

#include "doctest.h"
#include "fixtures.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/fusion.hpp"

using namespace nf;
using fx::z;

namespace {

bool all_pass(const FusionData& f) {
  FusionReport r = verify_fusion(f);
  for (const auto& c : r.checks) {
    INFO(c.name);
    CHECK(c.ok);
    CHECK(c.checked > 0);
  }
  return r.pass();
}

}  // namespace

TEST_CASE("pointed centers pass every verifier") {
  for (const auto& g : std::vector<std::vector<int>>{{}, {2}, {3}, {2, 2}, {4}}) {
    FusionData f = pointed_center_data(g);
    int order = 1;
    for (int d : g) order *= d;
    CHECK(f.s == order * order);
    CHECK(all_pass(f));
  }
  FusionData t = pointed_center_data({});
  CHECK(t.s == 1);
  CHECK_THROWS_AS(pointed_center_data({0}), InvalidParameter);
}

TEST_CASE("center data layout") {
  FusionData f = pointed_center_data({3});
  CHECK(f.labels[0] == Label{0, 0});
  CHECK(f.labels[5] == Label{1, 2});
  CHECK(f.dual[5] == 7);  // (2, 1)
  // (1,2) ⊗ (1,1) = (2,0)
  CHECK(f.N(5, 4, 6) == 1);
  // σ((1,2),(1,1)) = ψ(g) with ψ = 1, g = 1
  CHECK(f.sigma_block(5, 4, 6).get(0, 0) == z(3));
  CHECK(f.sigma_block(4, 5, 6).get(0, 0) == z(3, 2));
}

TEST_CASE("braiding agrees with Yetter-Drinfeld data") {
  YDDatum d{{3}, {{{1}, {z(3, 2)}}, {{2}, {z(3)}}}};
  FusionData f = pointed_center_data(d.group);
  std::vector<int> simples;
  for (const auto& l : LineCategory::yd_letter_labels(d)) {
    int idx = -1;
    for (int i = 0; i < f.s; ++i)
      if (f.labels[static_cast<std::size_t>(i)] == l) idx = i;
    REQUIRE(idx >= 0);
    simples.push_back(idx);
  }
  CHECK(fusion_braiding(f, simples).matrix() == yd_to_braiding(d).matrix());

  YDDatum d2{{2, 2}, {{{1, 0}, {Scalar(-1), Scalar(1)}}, {{0, 1}, {Scalar(-1), Scalar(-1)}}}};
  FusionData f2 = pointed_center_data(d2.group);
  std::vector<int> s2;
  for (const auto& l : LineCategory::yd_letter_labels(d2))
    for (int i = 0; i < f2.s; ++i)
      if (f2.labels[static_cast<std::size_t>(i)] == l) s2.push_back(i);
  CHECK(fusion_braiding(f2, s2).matrix() == yd_to_braiding(d2).matrix());
}

TEST_CASE("symmetric flip data") {
  FusionData f = pointed_center_data({2});
  for (auto& [k, m] : f.sigma) m = Matrix::identity(1);
  CHECK(all_pass(f));
}

TEST_CASE("located mutations") {
  FusionData f = pointed_center_data({2});
  FusionData a = f;
  a.alpha.begin()->second = a.alpha.begin()->second.scaled(Scalar(2));
  FusionReport r = verify_fusion(a);
  CHECK_FALSE(r.pass());

  FusionData p = f;
  p.alpha.at({1, 1, 1, 0, 1, 0}) = Matrix::from_dense({{Scalar(2)}});
  FusionCheck pc = verify_pentagon(p);
  CHECK_FALSE(pc.ok);
  REQUIRE_FALSE(pc.failures.empty());

  FusionData l = f;
  l.l[1] = Scalar(3);
  CHECK_FALSE(verify_units(l).ok);

  FusionData c = f;
  c.coev[2] = Scalar(2);
  FusionCheck dc = verify_duality(c);
  CHECK_FALSE(dc.ok);
  REQUIRE(dc.failures.size() == 1);
  CHECK(dc.failures[0].rfind("(2)", 0) == 0);
  CHECK_FALSE(verify_duality_reverse(c).ok);
  CHECK(verify_duality_reverse(c).informational);

  FusionData s = f;
  s.sigma.at({1, 2, 3}) = Matrix::from_dense({{Scalar(-1)}});
  CHECK_FALSE(verify_braiding(s).ok);
}

TEST_CASE("malformed data") {
  FusionData f = pointed_center_data({2});
  f.alpha.begin()->second = Matrix(2, 1);
  FusionCheck c = verify_fusion_structure(f);
  CHECK_FALSE(c.ok);
  CHECK_THROWS_AS(verify_pentagon(f), MalformedBlock);
  FusionData g = pointed_center_data({2});
  g.fusion[1] = 1;  // N(0,0,1)
  CHECK_FALSE(verify_fusion_structure(g).ok);
  CHECK_FALSE(verify_fusion(g).pass());
}

TEST_CASE("every single-entry mutation is caught for Z/2") {
  FusionData f = pointed_center_data({2});
  FusionOptions o;
  o.stop_at_first = true;
  auto entries = fusion_entries(f);
  CHECK(entries.size() == 64 + 16 + 4 * 4);
  for (const auto& e : entries) {
    INFO(e.describe());
    CHECK_FALSE(verify_fusion(perturbed(f, e, Scalar(1)), o).pass());
  }
}
