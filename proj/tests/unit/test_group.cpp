#include "doctest.h"
#include "ietk/group.hpp"

#include <set>

using namespace ietk;

namespace {

BasisPtr basis() {
  SymbolSpec s;
  s.name = "alpha";
  s.lo = Rational(2, 5);
  s.hi = Rational(1, 2);
  s.cf_terms.assign(40, 2);
  s.cf_terms[0] = 0;
  return SymbolBasis::make({s});
}

// Abstract oracle for Z wr Z/2 = (Z x Z) : Z/2.  Elements act on (slot, x) by
// (j, x) -> (s(j), x + m_{s(j)}); multiplication is function composition,
// worked out by hand:  (a.m, a.s)(b.m, b.s) = (k -> a.m[k] + b.m[s_a(k)], a.s^b.s).
struct ZwrZ2 {
  long m0 = 0, m1 = 0;
  int s = 0;
  bool operator<(const ZwrZ2& o) const {
    return std::tie(m0, m1, s) < std::tie(o.m0, o.m1, o.s);
  }
};
ZwrZ2 zmul(const ZwrZ2& a, const ZwrZ2& b) {
  ZwrZ2 r;
  r.s = a.s ^ b.s;
  r.m0 = a.m0 + (a.s ? b.m1 : b.m0);
  r.m1 = a.m1 + (a.s ? b.m0 : b.m1);
  return r;
}
std::vector<std::size_t> zwr_ball_sizes(int radius) {
  std::vector<ZwrZ2> gens{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
  std::set<ZwrZ2> seen{ZwrZ2{}};
  std::vector<ZwrZ2> frontier{ZwrZ2{}};
  std::vector<std::size_t> sizes{1};
  for (int r = 1; r <= radius; ++r) {
    std::vector<ZwrZ2> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        ZwrZ2 w = zmul(g, e);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

}  // namespace

TEST_SUITE_BEGIN("group");

TEST_CASE("generator bookkeeping") {
  auto b = basis();
  auto one = ExactReal::rational(1, 1, b);
  auto d = Domain::make({Component{"c", ComponentKind::Circle, one}}, b);
  auto al = ExactReal::symbol("alpha", b);
  // identity dropped, duplicates collapsed, inverses appended once
  FinGenGroup g(d, {{"r", rotation(d, 0, al)},
                    {"id", Iet::identity(d)},
                    {"r_again", rotation(d, 0, al)}});
  CHECK(g.generators().size() == 1);
  REQUIRE(g.symmetric_generators().size() == 2);
  CHECK(g.symmetric_generators()[1].first == "r^-1");
  // a self-inverse generator does not get a redundant inverse
  auto dd = Domain::make({Component{"a", ComponentKind::Circle, one},
                          Component{"b", ComponentKind::Circle, one}},
                         b);
  FinGenGroup h(dd, {{"t", component_permutation(dd, {1, 0})}});
  CHECK(h.symmetric_generators().size() == 1);
}

TEST_CASE("orbit of a rotation grows linearly") {
  auto b = basis();
  auto one = ExactReal::rational(1, 1, b);
  auto d = Domain::make({Component{"c", ComponentKind::Circle, one}}, b);
  FinGenGroup g(d, {{"r", rotation(d, 0, ExactReal::symbol("alpha", b))}});
  auto res = orbit(g, Point::make(d, 0, d->zero()), 10);
  CHECK(res.complete);
  REQUIRE(res.by_radius.size() == 11);
  for (int r = 0; r <= 10; ++r) CHECK(res.by_radius[r] == static_cast<std::size_t>(2 * r + 1));
  // points are pairwise distinct exact values (irrational rotation is free)
  CHECK(res.points.size() == 21);
  // cap truncates loudly
  auto capped = orbit(g, Point::make(d, 0, d->zero()), 10, 7);
  CHECK(!capped.complete);
  CHECK(capped.points.size() == 7);
}

TEST_CASE("ball of the slot extension matches the abstract wreath oracle") {
  auto b = basis();
  auto one = ExactReal::rational(1, 1, b);
  auto base = Domain::make({Component{"c", ComponentKind::Circle, one}}, b);
  auto ext = induce_finite_extension(base, {{"r", rotation(base, 0, ExactReal::symbol("alpha", b))}},
                                     GroupTable::cyclic(2));
  FinGenGroup g(ext.domain, ext.generators);
  REQUIRE(g.symmetric_generators().size() == 5);  // r@q0^-1, r@q1^-1 added, q1 self-inverse

  auto realized = ball(g, 6);
  auto oracle = zwr_ball_sizes(6);
  CHECK(realized.complete);
  REQUIRE(realized.by_radius.size() == oracle.size());
  for (std::size_t r = 0; r < oracle.size(); ++r) CHECK(realized.by_radius[r] == oracle[r]);
  // hand count of |B_2| freezes the oracle itself
  CHECK(oracle[1] == 6);
  CHECK(oracle[2] == 18);
}

TEST_CASE("regular orbits stop at discontinuities and boundaries") {
  auto b = basis();
  auto d = Domain::make({Component{"I", ComponentKind::Interval, ExactReal::rational(1, 1, b)}}, b);
  auto q = [&](long n, long m) { return ExactReal::rational(n, m, b); };
  auto swap = Iet::from_cells(d, {Cell{0, q(0, 1), q(1, 2), 0, q(1, 2)},
                                  Cell{0, q(1, 2), q(1, 1), 0, q(0, 1)}});
  FinGenGroup g(d, {{"s", swap}});

  // the break point is stuck: both s and s^-1 are discontinuous there
  auto [pts, status] = regular_orbit(g, Point::make(d, 0, q(1, 2)), 100);
  CHECK(status == ClosureStatus::Complete);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == Point::make(d, 0, q(1, 2)));
  // an ordinary point walks to its mirror image and closes up
  auto [pts2, status2] = regular_orbit(g, Point::make(d, 0, q(1, 8)), 100);
  CHECK(status2 == ClosureStatus::Complete);
  CHECK(pts2.size() == 2);
  // the domain boundary is its own regular orbit by convention
  auto [pts3, status3] = regular_orbit(g, Point::make(d, 0, q(0, 1)), 100);
  CHECK(status3 == ClosureStatus::Complete);
  CHECK(pts3.size() == 1);
  // the full graph still records the non-regular edge out of the break
  auto graph = orbit_graph(g, Point::make(d, 0, q(1, 2)), 100, false);
  CHECK(graph.vertices.size() == 2);
  REQUIRE(!graph.edges.empty());
  for (const auto& e : graph.edges) {
    CHECK(graph.vertices[e.to] == g.symmetric_generators()[0].second.apply(graph.vertices[e.from]));
    if (graph.vertices[e.from] == Point::make(d, 0, q(1, 2))) CHECK(!e.regular);
  }
}

TEST_CASE("obstruction set D_f") {
  auto b = basis();
  auto q = [&](long n, long m) { return ExactReal::rational(n, m, b); };
  // half swap: the single break has a closed (singleton) regular orbit
  auto d = Domain::make({Component{"I", ComponentKind::Interval, q(1, 1)}}, b);
  auto swap = Iet::from_cells(d, {Cell{0, q(0, 1), q(1, 2), 0, q(1, 2)},
                                  Cell{0, q(1, 2), q(1, 1), 0, q(0, 1)}});
  auto df = d_f_set(FinGenGroup(d, {{"s", swap}}), 100);
  REQUIRE(df.members.size() == 1);
  CHECK(df.members[0] == Point::make(d, 0, q(1, 2)));
  CHECK(df.orbits[0].size() == 1);
  CHECK(df.unresolved.empty());

  // continuous generators have nothing to resolve
  auto d2 = Domain::make({Component{"c0", ComponentKind::Circle, q(1, 1)},
                          Component{"c1", ComponentKind::Circle, q(1, 1)}},
                         b);
  FinGenGroup g2(d2, {{"tau", component_permutation(d2, {1, 0})},
                      {"R0", rotation(d2, 0, ExactReal::symbol("alpha", b))}});
  auto df2 = d_f_set(g2, 100);
  CHECK(df2.members.empty());
  CHECK(df2.unresolved.empty());

  // a lamp generator next to a rotation: the break orbits are infinite, so
  // with a finite cap they are reported unresolved, never classified
  auto d3 = Domain::make({Component{"0", ComponentKind::Circle, q(1, 1)},
                          Component{"1", ComponentKind::Circle, q(1, 1)},
                          Component{"2", ComponentKind::Circle, q(1, 1)}},
                         b);
  auto sigma = fiber_permutation(d3, {{0, 1}, {1, 2}, {2, 0}}, {{q(0, 1), q(1, 2)}});
  auto rot = synchronized_rotation(d3, ExactReal::symbol("alpha", b));
  auto df3 = d_f_set(FinGenGroup(d3, {{"sigma", sigma}, {"R", rot}}), 60);
  CHECK(df3.members.empty());
  CHECK(df3.unresolved.size() == 6);
}

TEST_CASE("birkhoff frequencies are exact counts") {
  auto b = basis();
  auto q = [&](long n, long m) { return ExactReal::rational(n, m, b); };
  auto d = Domain::make({Component{"c", ComponentKind::Circle, q(1, 1)}}, b);
  auto r = rotation(d, 0, ExactReal::symbol("alpha", b));
  auto E = Subdomain::make(d, {Arc{0, q(0, 1), q(3, 10)}});
  auto x = Point::make(d, 0, q(0, 1));
  // frozen against a high-precision sweep: 31 visits in the first 100 steps,
  // 300 in the first 1000
  CHECK(birkhoff_frequency(r, x, E, 100) == Rational(31, 100));
  CHECK(birkhoff_frequency(r, x, E, 1000) == Rational(3, 10));
  // a rational rotation visits periodically: 1/4 of the time for angle 1/4
  CHECK(birkhoff_frequency(rotation(d, 0, q(1, 4)), x, Subdomain::make(d, {Arc{0, q(0, 1), q(1, 4)}}),
                           1000) == Rational(1, 4));
  CHECK_THROWS_AS(birkhoff_frequency(r, x, E, 0), Error);
}

TEST_SUITE_END();
