#include "doctest.h"

#include "bmir/toric.hpp"

#include <algorithm>
#include <set>

using namespace bmir;

namespace {

Scalar L(unsigned i) { return Scalar::lambda(i - 1); }

FibrationModel fiber_p1_point(BlowupMode mode) {
  return make_model({{1, 1}}, {Rational(1)}, {}, {}, {0}, mode);
}

FibrationModel p1_over_p2_line() {
  return make_model({{1, 1}}, {Rational(1)}, {2}, {"", "-P"}, {0}, BlowupMode::AlongDivisor, {"P"});
}

IntMatrix m_X(long a1, long a2, long a3) {
  return {{1, 1, 1, -a1, -a2, -a3}, {0, 0, 0, 1, 1, 1}};
}

// Independent 2x2 positivity oracle by Cramer's rule.
std::set<std::vector<unsigned>> cramer_fixed_points(const IntMatrix& m, Rational w1, Rational w2) {
  std::set<std::vector<unsigned>> out;
  for (unsigned a = 0; a < m[0].size(); ++a)
    for (unsigned b = a + 1; b < m[0].size(); ++b) {
      long det = m[0][a] * m[1][b] - m[0][b] * m[1][a];
      if (det == 0) continue;
      Rational xa = (w1 * m[1][b] - w2 * m[0][b]) / det;
      Rational xb = (m[0][a] * w2 - m[1][a] * w1) / det;
      if (xa > 0 && xb > 0) out.insert({a, b});
    }
  return out;
}

}  // namespace

TEST_CASE("fixed_points") {
  CHECK(fixed_points(fiber_p1_point(BlowupMode::None)) == std::vector<std::vector<unsigned>>{{0}, {1}});
  auto p2 = make_model({{1, 1, 1}}, {Rational(1)}, {}, {}, {0}, BlowupMode::None);
  CHECK(fixed_points(p2).size() == 3);

  for (auto [a1, a2, a3] : {std::tuple{0L, 0L, 0L}, std::tuple{1L, 2L, 3L}, std::tuple{2L, 0L, 1L}}) {
    IntMatrix m = m_X(a1, a2, a3);
    long amax = std::max({a1, a2, a3});
    Rational w2(1), w1(amax + 2);
    FibrationModel model;
    model.K = 2;
    model.N = 6;
    model.m = m;
    model.omega = {w1, w2};
    auto fps = fixed_points(model);
    CHECK(fps.size() == 9);
    std::set<std::vector<unsigned>> got(fps.begin(), fps.end());
    CHECK(got == cramer_fixed_points(m, w1, w2));
    for (const auto& J : fps) {
      CHECK(J[0] < 3);
      CHECK(J[1] >= 3);
    }
  }
  FibrationModel wall;
  wall.K = 1;
  wall.N = 2;
  wall.m = {{1, -1}};
  wall.omega = {Rational(0)};
  CHECK_THROWS_AS(fixed_points(wall), DegenerateMomentError);
}

TEST_CASE("stratum_restrictions on sections") {
  auto model = fiber_p1_point(BlowupMode::None);
  auto st = strata(model);
  REQUIRE(st.size() == 2);
  auto r = stratum_restrictions(model, st[0]);
  Ring ring = model.base_ring;
  CohClass lam1(ring, -L(1)), lam2(ring, -L(2));
  CHECK(r.P[0] == lam1);
  CHECK(r.U[1] == lam1 - lam2);
  CHECK(r.U[0].is_zero());
  CHECK(r.euler == lam1 - lam2);
  CHECK(r.Pt.is_zero());
}

TEST_CASE("two by two solve on m_X columns {3,6}") {
  const long a1 = 1, a2 = 2, a3 = 3;
  FibrationModel model = make_model(m_X(a1, a2, a3), {Rational(5), Rational(1)}, {}, {}, {2, 5},
                                    BlowupMode::None);
  auto P = section_P(model, {2, 5});
  // Oracle: U_3 = P1 - Lambda_3 = 0 and U_6 = -a3 P1 + P2 - Lambda_6 = 0.
  Scalar lam3 = -L(3), lam6 = -L(6);
  Scalar p1 = lam3;
  Scalar p2 = lam6 + Scalar(a3) * p1;
  CHECK(P[0].degree0() == p1);
  CHECK(P[1].degree0() == p2);
  auto st = strata(model);
  for (const auto& s : st) {
    auto r = stratum_restrictions(model, s);
    for (unsigned j : s.fixed) CHECK(r.U[j].is_zero());
  }
}

TEST_CASE("gale_dual") {
  CHECK(gale_dual({{1, 0}, {0, 1}, {-1, -1}}) == IntMatrix{{1, 1, 1}});
  IntMatrix p1p1 = gale_dual({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(same_row_lattice(p1p1, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  CHECK_THROWS_AS(gale_dual({{1, 0}, {2, 0}}), ModelError);
  IntMatrix rays = rays_from_matrix(m_X(1, 2, 3));
  IntMatrix g = gale_dual(rays);
  for (const auto& row : g) {
    for (std::size_t c = 0; c < rays[0].size(); ++c) {
      long s = 0;
      for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * rays[i][c];
      CHECK(s == 0);
    }
  }
  CHECK(same_row_lattice(g, m_X(1, 2, 3)));
}

TEST_CASE("blowup_matrix") {
  // P^2 at the fixed point whose cone is spanned by v1, v2.
  IntMatrix bl = blowup_matrix({{1, 1, 1}}, {Rational(1)}, {0, 1});
  CHECK(same_row_lattice(bl, {{1, 1, 1, 0}, {1, 1, 0, -1}}));
  CHECK_THROWS_AS(blowup_matrix({{1, 1, 1}}, {Rational(1)}, {0, 1, 2}), ModelError);

  for (auto [a1, a2, a3] : {std::tuple{0L, 0L, 0L}, std::tuple{1L, 2L, 3L}, std::tuple{3L, 1L, 0L}}) {
    long amax = std::max({a1, a2, a3});
    IntMatrix out = blowup_matrix(m_X(a1, a2, a3), {Rational(amax + 2), Rational(1)}, {0, 3, 4});
    IntMatrix expected = {{1, 1, 1, -a1, -a2, -a3, 0}, {0, 0, 0, 1, 1, 1, 0}, {1, 0, 0, 1, 1, 0, -1}};
    CHECK(same_row_lattice(out, expected));
    auto c1 = c1_row_sums(out);
    auto c1X = c1_row_sums(m_X(a1, a2, a3));
    CHECK(c1[0] == c1X[0]);
    CHECK(c1[1] == c1X[1]);
    CHECK(c1[2] == 2);
  }
}

TEST_CASE("edges and blowup edges") {
  auto p1p1 = make_model({{1, 0, 1, 0}, {0, 1, 0, 1}}, {Rational(1), Rational(1)}, {}, {}, {0, 1},
                         BlowupMode::None);
  auto fps = fixed_points(p1p1);
  for (const auto& [a, b] : edges(p1p1)) {
    std::vector<unsigned> common;
    std::set_intersection(fps[a].begin(), fps[a].end(), fps[b].begin(), fps[b].end(),
                          std::back_inserter(common));
    CHECK(common.size() == 1);
  }
  CHECK(edges(p1p1).size() == 4);

  auto model = p1_over_p2_line();
  auto st = strata(model);
  long exceptional = 0;
  for (const auto& s : st) exceptional += s.over_A() ? 1 : 0;
  auto bfps = fixed_points(model);
  long at_alpha = 0;
  for (const auto& [a, b] : edges(model))
    if (bfps[a] == model.alpha || bfps[b] == model.alpha) ++at_alpha;
  CHECK(exceptional == 1 + at_alpha);

  auto es = blowup_edges(model, st);
  std::set<std::string> fams;
  for (const auto& e : es) {
    fams.insert(family_tag(e.family));
    if (e.family == EdgeFamily::ExceptionalSection) CHECK(e.dt == -1);
    if (e.family == EdgeFamily::SectionSection) CHECK(e.dt == 0);
    if (e.family == EdgeFamily::ExceptionalExceptional) CHECK(e.dt == 1);
    // Antisymmetry after transport.
    for (const auto& f : es)
      if (f.from == e.to && f.to == e.from) {
        const Ring& ring = st[e.from].over_A() ? st[e.from].ring : st[e.to].ring;
        CHECK(e.chi.map_to(ring) == -f.chi.map_to(ring));
      }
  }
  CHECK(fams == std::set<std::string>{"2.aa", "2.ab", "2.bb"});
}

TEST_CASE("exceptional restrictions") {
  auto model = p1_over_p2_line();
  for (const auto& s : strata(model)) {
    auto r = stratum_restrictions(model, s);
    if (s.kind == StratumKind::ExceptionalL) {
      CHECK(r.Pt == -model.c1L().map_to(model.im_ring));
      CHECK_FALSE(r.component);
    }
    if (s.kind == StratumKind::Exceptional) CHECK(r.Pt == -r.U[s.jplus]);
    if (s.kind == StratumKind::Section) CHECK(r.euler == r.U[0]);
  }
}

TEST_CASE("mori_support lists") {
  auto model = make_model({{1, 1}}, {Rational(1)}, {}, {}, {0}, BlowupMode::AlongSection);
  for (const auto& s : strata(model)) {
    auto ineq = mori_support(model, s);
    std::vector<std::string> txt;
    for (const auto& q : ineq) txt.push_back(q.to_string());
    if (s.kind == StratumKind::Section) CHECK(txt == std::vector<std::string>{"-dt >= 0", "d1 + dt >= 0"});
    if (s.kind == StratumKind::Exceptional) CHECK(txt == std::vector<std::string>{"d1 + dt >= 0", "d1 >= 0"});
  }
  auto b = p1_over_p2_line();
  for (const auto& s : strata(b)) {
    auto ineq = mori_support(b, s);
    std::vector<std::string> txt;
    for (const auto& q : ineq) txt.push_back(q.to_string());
    if (s.kind == StratumKind::AlphaTilde) CHECK(txt == std::vector<std::string>{"d1 >= 0", "-dt >= 0"});
    if (s.kind == StratumKind::ExceptionalL) CHECK(txt == std::vector<std::string>{"d1 >= 0", "dt >= 0"});
  }
}
