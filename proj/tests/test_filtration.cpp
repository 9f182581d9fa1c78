#include "doctest.h"
#include "fixtures.hpp"
#include "nichols_forge/dualize.hpp"
#include "nichols_forge/errors.hpp"
#include "nichols_forge/filtration.hpp"

using namespace nf;
using fx::z;

namespace {

std::vector<HopfStructure> instances() {
  return {HopfStructure::trivial(LineCategory::free(fx::rank_one(2))),
          fx::nichols_hopf(fx::rank_one(2), 2),
          fx::nichols_hopf(fx::rank_one(3), 3),
          fx::nichols_hopf(fx::rank_one(4, 3), 4),
          fx::nichols_hopf(fx::quantum_plane(), 4),
          fx::nichols_hopf(fx::a2_minus_one(), 6)};
}

// Exterior algebra on two letters of one Yetter-Drinfeld line over Z/2, moved
// off its graded basis by mixing 1 with x0 x1 (both of label zero).
HopfStructure scrambled() {
  YDDatum d{{2}, {{{1}, {Scalar(-1)}}, {{1}, {Scalar(-1)}}}};
  NicholsReport r = nichols_compute(yd_to_braiding(d), 4);
  HopfStructure t = from_nichols(r, LineCategory::yetter_drinfeld(d), LineCategory::yd_letter_labels(d));
  BlockTransform g = identity_transform(t.object);
  long zero = t.object.unit_index();
  g[static_cast<std::size_t>(zero)] = Matrix::from_dense({{1, 0}, {3, 1}});
  return act(g, t);
}

}  // namespace

TEST_CASE("radical filtration examples") {
  HopfFiltration f0 = radical_filtration(HopfStructure::trivial(LineCategory::free(fx::rank_one(2))));
  CHECK(f0.lo == -1);
  CHECK(f0.dims() == std::vector<std::size_t>{0, 1});

  HopfFiltration f2 = radical_filtration(fx::nichols_hopf(fx::rank_one(2), 2));
  CHECK(f2.dims() == std::vector<std::size_t>{0, 1, 2});

  HopfStructure t3 = fx::nichols_hopf(fx::rank_one(3), 3);
  HopfFiltration f3 = radical_filtration(t3);
  CHECK(f3.lo == -3);
  CHECK(f3.dims() == std::vector<std::size_t>{0, 1, 2, 3});
  // J^2 = span(x^2)
  CHECK(f3.at(-2).rows() == std::vector<SparseRow>{{{2, Scalar(1)}}});
  CHECK_THROWS_AS(radical_filtration(fx::group_algebra_z2()), NotCcc);
}

TEST_CASE("coradical filtration examples") {
  HopfFiltration f0 = coradical_filtration(HopfStructure::trivial(LineCategory::free(fx::rank_one(2))));
  CHECK(f0.dims() == std::vector<std::size_t>{0, 1});
  HopfStructure t3 = fx::nichols_hopf(fx::rank_one(3), 3);
  HopfFiltration f3 = coradical_filtration(t3);
  CHECK(f3.lo == -1);
  CHECK(f3.hi == 2);
  CHECK(f3.dims() == std::vector<std::size_t>{0, 1, 2, 3});
  // H_1 = span(1, x)
  CHECK(f3.at(1).rows() == std::vector<SparseRow>{{{0, Scalar(1)}}, {{1, Scalar(1)}}});
  CHECK_THROWS_AS(coradical_filtration(fx::group_algebra_z2()), NotCcc);
}

TEST_CASE("filtrations satisfy every condition") {
  for (const auto& t : instances())
    for (const auto& f : {radical_filtration(t), coradical_filtration(t), degree_filtration(t)}) {
      FiltrationChecks c = check_filtration(t, f);
      CHECK_MESSAGE(c.all(), to_string(f.kind));
    }
  HopfStructure s = scrambled();
  CHECK(check_filtration(s, radical_filtration(s)).all());
  CHECK(check_filtration(s, coradical_filtration(s)).all());
}

TEST_CASE("a broken chain is flagged") {
  HopfStructure t = fx::nichols_hopf(fx::rank_one(3), 3);
  HopfFiltration f = degree_filtration(t);
  // Swap the roles of x and x^2.
  f.chain[2] = Subspace::span(3, std::vector<SparseRow>{{{0, Scalar(1)}}, {{2, Scalar(1)}}});
  FiltrationChecks c = check_filtration(t, f);
  CHECK(c.multiplicative);
  CHECK_FALSE(c.comultiplicative);
  CHECK_FALSE(c.all());
  CHECK_THROWS_AS(associated_graded(t, f), InvalidFiltration);
  f.chain.pop_back();
  CHECK_THROWS_AS(check_filtration(t, f), InvalidFiltration);
}

TEST_CASE("associated graded of a graded filtration is the identity") {
  for (const auto& t : instances()) {
    HopfFiltration f = degree_filtration(t);
    CHECK(associated_graded(t, f) == t);
    CHECK(degenerate_limit(t, grading_split(t, f)) == t);
  }
}

TEST_CASE("route agreement") {
  std::vector<HopfStructure> all = instances();
  all.push_back(scrambled());
  for (const auto& t : all)
    for (const auto& f : {radical_filtration(t), coradical_filtration(t)}) {
      HopfStructure gr = associated_graded(t, f);
      GradingSplit s = grading_split(t, f);
      ExponentTable tab = exponent_table(t, s);
      CHECK(tab.non_negative());
      HopfStructure lim = degenerate_limit(t, s);
      CHECK(lim == gr);
      AxiomReport rep = verify_axioms(gr);
      CHECK(rep.pass());
      CHECK(check_connected(gr));
      CHECK(check_coconnected(gr));
      CHECK(respects_grading(gr));
      for (int d : *gr.grading) CHECK(d >= 0);
    }
}

TEST_CASE("closed orbits of Nichols algebras") {
  for (const auto& t : instances()) {
    HopfStructure gra = associated_graded(t, radical_filtration(t));
    HopfStructure grc = associated_graded(t, coradical_filtration(t));
    CHECK(graded_iso_search(gra, t).has_value());
    CHECK(graded_iso_search(grc, t).has_value());
  }
}

TEST_CASE("scrambled structure degenerates to its graded form") {
  HopfStructure s = scrambled();
  CHECK(verify_axioms(s).pass());
  CHECK_FALSE(s.grading.has_value());
  HopfStructure gr = associated_graded(s, coradical_filtration(s));
  REQUIRE(gr.grading.has_value());
  CHECK(exponent_table(s, grading_split(s, coradical_filtration(s))).counts.at("m").size() == 1);
  ExponentTable tab = exponent_table(s, grading_split(s, radical_filtration(s)));
  // The mixing shows up with positive λ-exponents.
  std::size_t positive = 0;
  for (const auto& [name, row] : tab.counts)
    for (const auto& [e, n] : row)
      if (e > 0) positive += n;
  CHECK(positive > 0);
}

TEST_CASE("one-parameter orbit") {
  HopfStructure t = fx::nichols_hopf(fx::a2_minus_one(), 6);
  HopfFiltration f = radical_filtration(t);
  GradingSplit s = grading_split(t, f);
  CHECK(one_param_orbit(t, s, Scalar(1)) == t);
  CHECK_THROWS_AS(one_param_orbit(t, s, Scalar(0)), InvalidParameter);
  HopfStructure t2 = one_param_orbit(t, s, Scalar(Rational(2, 3)));
  CHECK(verify_axioms(t2).pass());
  auto w = graded_iso_search(t, t2);
  REQUIRE(w.has_value());
  CHECK(act(*w, t) == t2);

  // Only even levels: λ = -1 acts trivially.
  HopfStructure q = fx::nichols_hopf(fx::rank_one(2), 2);
  GradingSplit even = grading_split(q, degree_filtration(q));
  for (auto& l : even.level) l *= 2;
  CHECK(one_param_orbit(q, even, Scalar(-1)) == q);

  HopfStructure s0 = scrambled();
  GradingSplit ss = grading_split(s0, coradical_filtration(s0));
  HopfStructure s2 = one_param_orbit(s0, ss, z(5));
  CHECK(verify_axioms(s2).pass());
}

TEST_CASE("primitive dimensions along a path") {
  std::vector<Scalar> lambdas = {Scalar(1), Scalar(2), Scalar(Rational(-1, 3)), z(3)};
  struct Case {
    HopfStructure t;
    std::size_t dim;
  };
  std::vector<Case> cases = {{HopfStructure::trivial(LineCategory::free(fx::rank_one(2))), 0},
                             {fx::nichols_hopf(fx::rank_one(3), 3), 1},
                             {fx::nichols_hopf(fx::quantum_plane(), 4), 2},
                             {scrambled(), 2}};
  for (const auto& c : cases) {
    PathReport r = primitive_dims_along_path(c.t, grading_split(c.t, radical_filtration(c.t)), lambdas);
    CHECK(r.dims == std::vector<std::size_t>(lambdas.size(), c.dim));
    CHECK(r.limit_dim == c.dim);
    CHECK(r.constant());
    CHECK(r.semicontinuous());
  }
}

TEST_CASE("negative exponents are rejected") {
  HopfStructure t = fx::nichols_hopf(fx::rank_one(3), 3);
  GradingSplit s = grading_split(t, degree_filtration(t));
  std::reverse(s.level.begin(), s.level.end());
  CHECK_FALSE(exponent_table(t, s).non_negative());
  CHECK_THROWS_AS(degenerate_limit(t, s), InvalidFiltration);
}

TEST_CASE("filtration recovered from the weights of its split") {
  std::vector<HopfStructure> all = instances();
  all.push_back(scrambled());
  for (const auto& t : all)
    for (const auto& f : {radical_filtration(t), coradical_filtration(t)}) {
      HopfFiltration w = weight_filtration(t, grading_split(t, f));
      for (int i = std::min(f.lo, w.lo) - 1; i <= std::max(f.hi, w.hi) + 1; ++i) CHECK(w.at(i) == f.at(i));
      CHECK(check_filtration(t, w).all());
    }
  // Reversed weights do not give a Hopf filtration.
  HopfStructure t = fx::nichols_hopf(fx::rank_one(3), 3);
  GradingSplit s = grading_split(t, degree_filtration(t));
  std::reverse(s.level.begin(), s.level.end());
  CHECK_FALSE(check_filtration(t, weight_filtration(t, s)).all());
}
