#include "doctest.h"

#include "ietk/imanishi.hpp"

using namespace ietk;

namespace {

// sqrt(2) - 1 = [0; 2, 2, 2, ...]; plenty of terms for any comparison here.
BasisPtr alpha_basis() {
  SymbolSpec alpha;
  alpha.name = "alpha";
  alpha.lo = Rational(2, 5);
  alpha.hi = Rational(1, 2);
  alpha.cf_terms.assign(48, 2);
  alpha.cf_terms[0] = 0;
  return SymbolBasis::make({alpha});
}

struct TwoCircles {
  BasisPtr basis = alpha_basis();
  DomainPtr dom = Domain::make({{"c0", ComponentKind::Circle, ExactReal::rational(1, basis)},
                                {"c1", ComponentKind::Circle, ExactReal::rational(1, basis)}},
                               basis);
  ExactReal alpha = ExactReal::symbol("alpha", basis);
  Iet tau = component_permutation(dom, {1, 0});
  Iet r0 = rotation(dom, 0, alpha);
  Iet r1 = rotation(dom, 1, alpha);
};

void check_partition(const DomainPtr& dom, const Decomposition& dec) {
  std::vector<Subdomain> parts;
  for (const auto& p : dec.irreducible) parts.push_back(p.part);
  for (const auto& p : dec.finite_part) parts.push_back(p.part);
  for (const auto& p : dec.residual_undecided) parts.push_back(p);
  Subdomain covered = Subdomain::empty(dom);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      CHECK(!parts[i].intersects(parts[j]));
    covered = covered.unite(parts[i]);
  }
  CHECK(covered == Subdomain::whole(dom));
}

}  // namespace

TEST_SUITE("imanishi") {
  TEST_CASE("swap of two circles: one finite class of cardinality 2") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"tau", f.tau}});
    Decomposition dec = imanishi_decompose(g, 10000);
    REQUIRE(dec.finite_part.size() == 1);
    CHECK(dec.irreducible.empty());
    CHECK(dec.residual_undecided.empty());
    CHECK(dec.finite_part[0].part == Subdomain::whole(f.dom));
    CHECK(dec.finite_part[0].cardinality == 2);
    check_partition(f.dom, dec);
    CHECK(finite_orbit_triviality(g, 10000) == Verdict::No);
  }

  TEST_CASE("swap plus one rotation: a single irreducible class") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"tau", f.tau}, {"R0", f.r0}});
    Decomposition dec = imanishi_decompose(g, 10000);
    REQUIRE(dec.irreducible.size() == 1);
    CHECK(dec.finite_part.empty());
    CHECK(dec.residual_undecided.empty());
    CHECK(dec.irreducible[0].part == Subdomain::whole(f.dom));
    CHECK(dec.irreducible[0].density_corroborated);
    check_partition(f.dom, dec);
    CHECK(finite_orbit_triviality(g, 10000) == Verdict::Yes);
  }

  TEST_CASE("independent rotations: the two circles are separate irreducible classes") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"R0", f.r0}, {"R1", f.r1}});
    Decomposition dec = imanishi_decompose(g, 10000);
    REQUIRE(dec.irreducible.size() == 2);
    CHECK(dec.finite_part.empty());
    CHECK(dec.residual_undecided.empty());
    CHECK(dec.irreducible[0].part == Subdomain::of_component(f.dom, 0));
    CHECK(dec.irreducible[1].part == Subdomain::of_component(f.dom, 1));
    CHECK(dec.irreducible[0].density_corroborated);
    CHECK(dec.irreducible[1].density_corroborated);
    check_partition(f.dom, dec);

    // every listed piece is invariant under every generator
    for (const auto& [name, t] : g.generators())
      for (const auto& p : dec.irreducible) CHECK(t.is_invariant(p.part));
  }

  TEST_CASE("half swap of an interval: cut resolves it into a finite class") {
    BasisPtr b = alpha_basis();
    DomainPtr dom =
        Domain::make({{"I", ComponentKind::Interval, ExactReal::rational(1, b)}}, b);
    auto q = [&](long n, long d) { return ExactReal::rational(n, d, b); };
    Iet half_swap = Iet::from_cells(dom, {Cell{0, q(0, 1), q(1, 2), 0, q(1, 2)},
                                          Cell{0, q(1, 2), q(1, 1), 0, q(0, 1)}});
    FinGenGroup g(dom, {{"s", half_swap}});
    Decomposition dec = imanishi_decompose(g, 100);
    REQUIRE(dec.finite_part.size() == 1);
    CHECK(dec.finite_part[0].part == Subdomain::whole(dom));
    CHECK(dec.finite_part[0].cardinality == 2);
    CHECK(dec.irreducible.empty());
    CHECK(dec.residual_undecided.empty());
    CHECK(finite_orbit_triviality(g, 100) == Verdict::No);
  }

  TEST_CASE("rational rotation: finite class of cardinality 4") {
    BasisPtr b = alpha_basis();
    DomainPtr dom = Domain::make({{"c", ComponentKind::Circle, ExactReal::rational(1, b)}}, b);
    FinGenGroup g(dom, {{"R", rotation(dom, 0, ExactReal::rational(1, 4, b))}});
    Decomposition dec = imanishi_decompose(g, 1000);
    REQUIRE(dec.finite_part.size() == 1);
    CHECK(dec.finite_part[0].cardinality == 4);
    CHECK(finite_orbit_triviality(g, 1000) == Verdict::No);
  }

  TEST_CASE("irrational rotation: irreducible, and trivially finite-orbit-free") {
    BasisPtr b = alpha_basis();
    DomainPtr dom = Domain::make({{"c", ComponentKind::Circle, ExactReal::rational(1, b)}}, b);
    FinGenGroup g(dom, {{"R", rotation(dom, 0, ExactReal::symbol("alpha", b))}});
    Decomposition dec = imanishi_decompose(g, 10000);
    REQUIRE(dec.irreducible.size() == 1);
    CHECK(dec.irreducible[0].density_corroborated);
    CHECK(finite_orbit_triviality(g, 10000) == Verdict::Yes);
  }

  TEST_CASE("untouched components split off as singleton classes") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"R0", f.r0}});
    Decomposition dec = imanishi_decompose(g, 10000);
    REQUIRE(dec.irreducible.size() == 1);
    REQUIRE(dec.finite_part.size() == 1);
    CHECK(dec.irreducible[0].part == Subdomain::of_component(f.dom, 0));
    CHECK(dec.finite_part[0].part == Subdomain::of_component(f.dom, 1));
    CHECK(dec.finite_part[0].cardinality == 1);
    CHECK(finite_orbit_triviality(g, 10000) == Verdict::Yes);
    check_partition(f.dom, dec);
  }

  TEST_CASE("interval block exchange by an irrational length stays undecided") {
    // The lone discontinuity has an infinite regular orbit, so no cap can
    // resolve it; the honest answer is a residual piece, never a guess.
    BasisPtr b = alpha_basis();
    DomainPtr dom =
        Domain::make({{"I", ComponentKind::Interval, ExactReal::rational(1, b)}}, b);
    ExactReal a = ExactReal::symbol("alpha", b);
    ExactReal one = ExactReal::rational(1, b);
    Iet ex = Iet::from_cells(dom, {Cell{0, dom->zero(), a, 0, one - a},
                                   Cell{0, a, one, 0, dom->zero()}});
    FinGenGroup g(dom, {{"E", ex}});
    Decomposition dec = imanishi_decompose(g, 500);
    REQUIRE(dec.residual_undecided.size() == 1);
    CHECK(dec.residual_undecided[0] == Subdomain::whole(dom));
    CHECK(dec.irreducible.empty());
    CHECK(dec.finite_part.empty());
    CHECK(!dec.complete());
    CHECK(finite_orbit_triviality(g, 500) == Verdict::Unknown);

    StabilityReport rep = relative_stability(g, {{"E", ex}}, 500);
    CHECK(rep.stable == Verdict::Unknown);
    CHECK(rep.entries.empty());
  }

  TEST_CASE("stability: doubled rotation preserves the circle") {
    BasisPtr b = alpha_basis();
    DomainPtr dom = Domain::make({{"c", ComponentKind::Circle, ExactReal::rational(1, b)}}, b);
    ExactReal a = ExactReal::symbol("alpha", b);
    FinGenGroup g(dom, {{"R", rotation(dom, 0, a)}});
    StabilityReport rep = relative_stability(g, {{"R2", rotation(dom, 0, a + a)}}, 10000);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].preserved == Verdict::Yes);
    CHECK(rep.stable == Verdict::Yes);
  }

  TEST_CASE("stability: dropping the swap splits the joint class") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"tau", f.tau}, {"R0", f.r0}});
    StabilityReport rep = relative_stability(g, {{"R0", f.r0}, {"R1", f.r1}}, 10000);
    REQUIRE(rep.entries.size() == 1);
    CHECK(rep.entries[0].component == Subdomain::whole(f.dom));
    CHECK(rep.entries[0].preserved == Verdict::No);
    CHECK(rep.stable == Verdict::No);
    // the sub-decomposition, reported in the original coordinates
    REQUIRE(rep.entries[0].under_h.irreducible.size() == 2);
    CHECK(rep.entries[0].under_h.irreducible[0].part == Subdomain::of_component(f.dom, 0));
    CHECK(rep.entries[0].under_h.irreducible[1].part == Subdomain::of_component(f.dom, 1));
  }

  TEST_CASE("stability: squared rotations preserve both circles") {
    TwoCircles f;
    FinGenGroup g(f.dom, {{"R0", f.r0}, {"R1", f.r1}});
    Iet r0sq = f.r0.compose(f.r0);
    Iet r1sq = f.r1.compose(f.r1);
    StabilityReport rep = relative_stability(g, {{"R0^2", r0sq}, {"R1^2", r1sq}}, 10000);
    REQUIRE(rep.entries.size() == 2);
    for (const auto& e : rep.entries) {
      CHECK(e.preserved == Verdict::Yes);
      REQUIRE(e.under_h.irreducible.size() == 1);
      CHECK(e.under_h.irreducible[0].part == e.component);
      CHECK(e.under_h.irreducible[0].density_corroborated);
    }
    CHECK(rep.stable == Verdict::Yes);
  }
}
