#include "doctest.h"
#include "ietk/domain.hpp"

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

DomainPtr circle_pair(BasisPtr b) {
  auto one = ExactReal::rational(1, 1, b);
  return Domain::make({Component{"c0", ComponentKind::Circle, one},
                       Component{"c1", ComponentKind::Circle, one},
                       Component{"seg", ComponentKind::Interval, ExactReal::rational(1, 2, b)}},
                      b);
}

}  // namespace

TEST_SUITE_BEGIN("domain");

TEST_CASE("domain construction and lookups") {
  auto b = basis();
  auto d = circle_pair(b);
  CHECK(d->size() == 3);
  CHECK(d->index_of("c1") == 1);
  CHECK(!d->index_of("nope"));
  CHECK(d->total_length() == ExactReal::rational(5, 2, b));
  CHECK_THROWS_AS(Domain::make({}, b), Error);
  CHECK_THROWS_AS(
      Domain::make({Component{"x", ComponentKind::Circle, ExactReal::rational(0, 1, b)}}, b),
      Error);
  CHECK_THROWS_AS(Domain::make({Component{"x", ComponentKind::Circle, d->zero()},
                                Component{"x", ComponentKind::Circle, d->zero()}},
                               b),
                  Error);
}

TEST_CASE("points validate and compare") {
  auto b = basis();
  auto d = circle_pair(b);
  auto p = Point::make(d, "c0", ExactReal::symbol("alpha", b));
  CHECK(p.comp == 0);
  CHECK(!p.is_boundary());
  CHECK(Point::make(d, "seg", d->zero()).is_boundary());
  CHECK(!Point::make(d, "c0", d->zero()).is_boundary());  // circles have no boundary
  CHECK_THROWS_AS(Point::make(d, "c0", ExactReal::rational(1, 1, b)), Error);
  CHECK_THROWS_AS(Point::make(d, "seg", ExactReal::rational(3, 4, b)), Error);
  CHECK_THROWS_AS(Point::make(d, "c0", -ExactReal::symbol("alpha", b)), Error);
  CHECK(p == Point::make(d, 0, ExactReal::symbol("alpha", b)));
  CHECK(p != Point::make(d, 1, ExactReal::symbol("alpha", b)));
}

TEST_CASE("subdomain normalization, wrap notation, measure") {
  auto b = basis();
  auto d = circle_pair(b);
  auto q = [&](long num, long den) { return ExactReal::rational(num, den, b); };

  // wrap through 0 in both spellings
  auto s1 = Subdomain::make(d, {Arc{0, q(3, 5), q(1, 5)}});
  auto s2 = Subdomain::make(d, {Arc{0, q(3, 5), q(6, 5)}});
  CHECK(s1 == s2);
  CHECK(s1.arcs().size() == 2);
  CHECK(s1.measure() == q(3, 5));
  // arcs merge across a shared endpoint
  auto s3 = Subdomain::make(d, {Arc{0, q(0, 1), q(1, 4)}, Arc{0, q(1, 4), q(1, 2)}});
  CHECK(s3.arcs().size() == 1);
  CHECK(s3 == Subdomain::make(d, {Arc{0, q(0, 1), q(1, 2)}}));
  // empty arcs vanish; [s, s) is empty, the full circle is [0, L)
  CHECK(Subdomain::make(d, {Arc{0, q(1, 3), q(1, 3)}}).is_empty());
  CHECK(Subdomain::of_component(d, 0).measure() == q(1, 1));
  // intervals reject wraps
  CHECK_THROWS_AS(Subdomain::make(d, {Arc{2, q(1, 4), q(1, 8)}}), Error);
  CHECK_THROWS_AS(Subdomain::make(d, {Arc{2, q(1, 4), q(3, 4)}}), Error);
}

TEST_CASE("subdomain algebra") {
  auto b = basis();
  auto d = circle_pair(b);
  auto q = [&](long num, long den) { return ExactReal::rational(num, den, b); };
  auto A = Subdomain::make(d, {Arc{0, q(0, 1), q(1, 2)}});
  auto B = Subdomain::make(d, {Arc{0, q(1, 4), q(3, 4)}});

  CHECK(A.intersect(B) == Subdomain::make(d, {Arc{0, q(1, 4), q(1, 2)}}));
  CHECK(A.unite(B) == Subdomain::make(d, {Arc{0, q(0, 1), q(3, 4)}}));
  CHECK(A.setminus(B) == Subdomain::make(d, {Arc{0, q(0, 1), q(1, 4)}}));
  CHECK(A.sym_diff(B) ==
        Subdomain::make(d, {Arc{0, q(0, 1), q(1, 4)}, Arc{0, q(1, 2), q(3, 4)}}));
  CHECK(A.sym_diff(A).is_empty());
  CHECK(A.complement().measure() == q(2, 1));  // 1/2 on c0, 1 on c1, 1/2 on seg
  CHECK(A.complement().complement() == A);
  CHECK(Subdomain::whole(d).complement().is_empty());
  CHECK(A.intersects(B));
  CHECK(!A.intersects(Subdomain::make(d, {Arc{0, q(1, 2), q(3, 4)}})));  // half-open!
  // containment honors half-open ends
  CHECK(A.contains(Point::make(d, 0, q(0, 1))));
  CHECK(!A.contains(Point::make(d, 0, q(1, 2))));
}

TEST_CASE("translation on circles") {
  auto b = basis();
  auto d = circle_pair(b);
  auto al = ExactReal::symbol("alpha", b);
  auto q = [&](long num, long den) { return ExactReal::rational(num, den, b); };
  auto J = Subdomain::make(d, {Arc{0, q(0, 1), q(1, 2)}});

  CHECK(J.translated(al) == Subdomain::make(d, {Arc{0, al, al + q(1, 2)}}));
  // 3a mod 1 = 3a - 1, no wrap since 3a - 1 + 1/2 < 1
  auto t3 = J.translated(al.scaled(3));
  CHECK(t3 == Subdomain::make(d, {Arc{0, al.scaled(3) - q(1, 1), al.scaled(3) - q(1, 2)}}));
  // translation by 2a wraps: 2a + 1/2 > 1
  auto t2 = J.translated(al.scaled(2));
  CHECK(t2.arcs().size() == 2);
  CHECK(t2.measure() == q(1, 2));
  // round trip
  CHECK(t2.translated(-al.scaled(2)) == J);
  // intervals refuse
  CHECK_THROWS_AS(Subdomain::of_component(d, 2).translated(al), Error);
}

TEST_SUITE_END();
