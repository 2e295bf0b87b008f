#include "doctest.h"
#include "ietk/constructions.hpp"
#include "ietk/finite_subgroup.hpp"

#include <algorithm>

using namespace ietk;

namespace {

BasisPtr alpha_basis() {
  SymbolSpec alpha;
  alpha.name = "alpha";
  alpha.lo = Rational(2, 5);
  alpha.hi = Rational(1, 2);
  alpha.cf_terms.assign(48, 2);
  alpha.cf_terms[0] = 0;
  return SymbolBasis::make({alpha});
}

// alpha and a second independent symbol (the fractional part of sqrt 3)
BasisPtr two_symbol_basis() {
  SymbolSpec alpha;
  alpha.name = "alpha";
  alpha.lo = Rational(2, 5);
  alpha.hi = Rational(1, 2);
  alpha.cf_terms.assign(48, 2);
  alpha.cf_terms[0] = 0;
  SymbolSpec beta;
  beta.name = "beta";
  beta.lo = Rational(7, 10);
  beta.hi = Rational(3, 4);
  beta.cf_terms.assign(48, 0);
  for (std::size_t i = 1; i < beta.cf_terms.size(); ++i) beta.cf_terms[i] = i % 2 ? 1 : 2;
  return SymbolBasis::make({alpha, beta});
}

ExactReal q(long num, long den, const BasisPtr& b) { return ExactReal::rational(num, den, b); }

LampSpec z3_spec(const BasisPtr& b) {
  LampSpec sp;
  sp.factor_orders = {3};
  sp.angles = {ExactReal::symbol("alpha", b)};
  sp.basis = b;
  return sp;
}

// The wreath multiplication written straight from the definition of
// A wr Z^k = (direct sum of A) x| Z^k, as an oracle for the library's law:
// (f1, n1)(f2, n2) = (f1 + f2(. - n1), n1 + n2).
WreathNormalForm oracle_mul(const WreathNormalForm& x, const WreathNormalForm& y,
                            const std::vector<unsigned>& orders) {
  WreathNormalForm r;
  r.shift.resize(x.shift.size());
  for (std::size_t j = 0; j < r.shift.size(); ++j) r.shift[j] = x.shift[j] + y.shift[j];
  r.lamp = x.lamp;
  for (const auto& [pos, val] : y.lamp) {
    std::vector<long> moved = pos;
    for (std::size_t j = 0; j < moved.size(); ++j) moved[j] += x.shift[j];
    auto it = r.lamp.find(moved);
    if (it == r.lamp.end()) it = r.lamp.emplace(moved, std::vector<unsigned>(orders.size(), 0)).first;
    bool all_zero = true;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      it->second[i] = (it->second[i] + val[i]) % orders[i];
      all_zero = all_zero && it->second[i] == 0;
    }
    if (all_zero) r.lamp.erase(it);
  }
  return r;
}

WreathNormalForm form(std::map<std::vector<long>, std::vector<unsigned>> lamp,
                      std::vector<long> shift) {
  WreathNormalForm f;
  f.lamp = std::move(lamp);
  f.shift = std::move(shift);
  return f;
}

// A lamp move over an arbitrary arc (not a translate of the declared support).
Iet lamp_move(const Lamplighter& ll, const std::vector<unsigned>& a,
              const std::pair<ExactReal, ExactReal>& arc) {
  std::map<std::uint32_t, std::uint32_t> m;
  for (std::size_t g = 0; g < ll.order_a(); ++g) {
    std::vector<unsigned> d = ll.a_digits(g);
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = (d[i] + a[i]) % ll.spec().factor_orders[i];
    m[static_cast<std::uint32_t>(g)] = static_cast<std::uint32_t>(ll.a_index(d));
  }
  return fiber_permutation(ll.domain(), m, {arc});
}

Iet commutator(const Iet& a, const Iet& b) {
  return a.compose(b).compose(a.inverse()).compose(b.inverse());
}

// sigma and R of the Z/3 wr Z base system, rebuilt independently of HjBuild.
Iet base_sigma(const HjBuild& hj, long pos) {
  Subdomain support = hj.i0.translated(hj.alpha.scaled(Rational(pos)));
  std::vector<std::pair<ExactReal, ExactReal>> arcs;
  for (const Arc& a : support.arcs()) arcs.emplace_back(a.start, a.end);
  return fiber_permutation(hj.base, {{0, 1}, {1, 2}, {2, 0}}, arcs);
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("lamplighter realizes normal forms and refuses dependent angles") {
    BasisPtr b = alpha_basis();
    Lamplighter ll(z3_spec(b));
    CHECK(ll.domain()->size() == 3);
    CHECK(ll.domain()->component(0).label == "0:c");
    CHECK(ll.group().generators().size() == 2);
    CHECK(ll.group().generators()[0].first == "s");
    CHECK(ll.group().generators()[1].first == "R");

    // the empty normal form is the identity, sigma has the order of A
    CHECK(ll.evaluate(form({}, {0})).is_identity());
    Iet sigma = ll.evaluate(form({{{0}, {1}}}, {0}));
    CHECK(sigma == ll.group().generators()[0].second);
    CHECK(!sigma.compose(sigma).is_identity());
    CHECK(sigma.compose(sigma).compose(sigma).is_identity());

    // lamps at distinct positions commute: [sigma, R sigma R^-1] = id
    Iet rot = ll.group().generators()[1].second;
    Iet conj = rot.compose(sigma).compose(rot.inverse());
    CHECK(commutator(sigma, conj).is_identity());
    CHECK(conj == ll.sigma({1}, {1}));

    LampSpec rational = z3_spec(b);
    rational.angles = {q(1, 4, b)};
    CHECK_THROWS_WITH_AS(Lamplighter{rational}, doctest::Contains("independent"), Error);
    LampSpec bad;
    bad.factor_orders = {1};
    bad.angles = {ExactReal::symbol("alpha", b)};
    bad.basis = b;
    CHECK_THROWS_WITH_AS(Lamplighter{bad}, doctest::Contains("at least 2"), Error);
  }

  TEST_CASE("lamp moves over arbitrary arcs commute (abelian fibers)") {
    BasisPtr b = alpha_basis();
    Lamplighter ll(z3_spec(b));
    // a grid of 20 arc pairs, overlapping and disjoint in all patterns
    int checked = 0;
    for (long i = 0; i < 5; ++i)
      for (long j = 0; j < 4; ++j) {
        Iet u = lamp_move(ll, {1}, {q(i, 7, b), q(i, 7, b) + q(1, 5, b)});
        Iet v = lamp_move(ll, {2}, {q(j, 9, b), q(j, 9, b) + q(1, 3, b)});
        CHECK(commutator(u, v).is_identity());
        ++checked;
      }
    CHECK(checked == 20);
  }

  TEST_CASE("evaluate is a homomorphism for the abstract wreath law") {
    BasisPtr b = alpha_basis();
    Lamplighter ll(z3_spec(b));
    std::vector<WreathNormalForm> sample = {
        form({}, {0}),
        form({}, {1}),
        form({}, {-2}),
        form({{{0}, {1}}}, {0}),
        form({{{0}, {2}}}, {1}),
        form({{{-1}, {1}}, {{2}, {2}}}, {-1}),
        form({{{1}, {1}}, {{3}, {1}}}, {2}),
    };
    for (const auto& x : sample)
      for (const auto& y : sample) {
        WreathNormalForm xy = oracle_mul(x, y, {3});
        CHECK(ll.evaluate(xy) == ll.evaluate(x).compose(ll.evaluate(y)));
      }
    // inverse sanity through the oracle: x * x^-1 realizes the identity
    for (const auto& x : sample) {
      Iet realized = ll.evaluate(x);
      CHECK(realized.compose(realized.inverse()).is_identity());
    }
  }

  TEST_CASE("wreath embedding verifies exhaustively at depth 6") {
    BasisPtr b = alpha_basis();
    WreathCheckReport r1 = verify_wreath_embedding(z3_spec(b), 1);
    CHECK(r1.ok);
    CHECK(r1.exhaustive);

    WreathCheckReport r6 = verify_wreath_embedding(z3_spec(b), 6);
    CHECK(r6.ok);
    CHECK(r6.exhaustive);
    CHECK(r6.forms_checked > 100);
    CHECK(r6.forms_checked > r1.forms_checked);
    CHECK(!r6.witness.has_value());
  }

  TEST_CASE("wreath embedding over Z^2 with two independent angles") {
    BasisPtr b = two_symbol_basis();
    LampSpec sp;
    sp.factor_orders = {2};
    sp.angles = {ExactReal::symbol("alpha", b), ExactReal::symbol("beta", b)};
    sp.basis = b;
    Lamplighter ll(sp);
    CHECK(ll.group().generators()[0].first == "s");
    CHECK(ll.group().generators()[1].first == "R1");
    CHECK(ll.group().generators()[2].first == "R2");
    WreathCheckReport r = verify_wreath_embedding(sp, 3);
    CHECK(r.ok);
    CHECK(r.exhaustive);

    LampSpec dependent = sp;
    dependent.angles = {ExactReal::symbol("alpha", b),
                        ExactReal::symbol("alpha", b).scaled(Rational(1, 2))};
    CHECK_THROWS_WITH_AS(verify_wreath_embedding(dependent, 2),
                         doctest::Contains("independent"), Error);
  }

  TEST_CASE("a rational angle collapses the embedding and the search finds it") {
    BasisPtr b = alpha_basis();
    LampSpec sp = z3_spec(b);
    sp.angles = {q(1, 4, b)};
    sp.allow_dependent_angles = true;
    WreathCheckReport r = verify_wreath_embedding(sp, 4);
    CHECK(!r.ok);
    REQUIRE(r.witness.has_value());
    // R^4 realizes a full turn: a nontrivial normal form acting as the identity
    CHECK(*r.witness == std::vector<std::string>(4, "R"));
    Lamplighter ll(sp);
    Iet realized = Iet::identity(ll.domain());
    for (const std::string& name : *r.witness) {
      bool found = false;
      for (const auto& [n, g] : ll.group().symmetric_generators())
        if (n == name) {
          realized = realized.compose(g);
          found = true;
        }
      CHECK(found);
    }
    CHECK(realized.is_identity());
  }

  TEST_CASE("lamplighter-like extension reduces to G, to A, and to the lamplighter") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    DomainPtr circle = Domain::make({{"c", ComponentKind::Circle, q(1, 1, b)}}, b);
    FinGenGroup g(circle, {{"R", rotation(circle, 0, alpha)}});

    // J empty: every sigma_b is the identity and gets dropped
    LlLike trivial_j = build_ll_like(g, {3}, Subdomain::empty(circle));
    CHECK(trivial_j.domain->size() == 3);
    CHECK(trivial_j.group.generators().size() == 1);
    CHECK(trivial_j.group.generators()[0].first == "R");

    // G trivial: the group is a faithful copy of A = Z/2 x Z/3
    Subdomain half = Subdomain::make(circle, {Arc{0, q(0, 1, b), q(1, 2, b)}});
    LlLike just_a = build_ll_like(FinGenGroup(circle, {}), {2, 3}, half);
    CHECK(just_a.domain->size() == 6);
    std::vector<Iet> a_gens;
    for (const auto& [name, iet] : just_a.group.generators()) a_gens.push_back(iet);
    FiniteSubgroup a_copy = FiniteSubgroup::generate(just_a.domain, a_gens);
    CHECK(a_copy.order() == 6);
    CHECK(a_copy.table().is_abelian());

    // G = <rotation>, A = Z/3, J = [0,1/2): the lamplighter generators again
    LlLike ll = build_ll_like(g, {3}, half);
    Lamplighter direct(z3_spec(b));
    REQUIRE(ll.group.generators().size() == 3);
    CHECK(ll.domain->component(2).label == "2:c");
    CHECK(ll.group.generators()[0].first == "R");
    CHECK(ll.group.generators()[0].second.str() ==
          direct.group().generators()[1].second.str());
    CHECK(ll.group.generators()[1].first == "s1");
    CHECK(ll.group.generators()[1].second.str() ==
          direct.group().generators()[0].second.str());
    // s2 = s1 s1
    CHECK(ll.group.generators()[2].second.str() ==
          ll.group.generators()[1].second.compose(ll.group.generators()[1].second).str());
  }

  TEST_CASE("H_J: flip involutions, support-commutation biconditional, commutator reduction") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    HjBuild hj = build_hj({Arc{0, q(0, 1, b), q(1, 5, b)}}, alpha);
    CHECK(hj.domain->size() == 6);
    CHECK(hj.domain->component(0).label == "0:0:c");
    CHECK(hj.domain->component(5).label == "1:2:c");
    CHECK(hj.tau.compose(hj.tau).is_identity());
    CHECK_THROWS_WITH_AS(build_hj({Arc{1, q(0, 1, b), q(1, 5, b)}}, alpha),
                         doctest::Contains("designated"), Error);

    // [sigma, tau_K] = id exactly when K avoids the lamp support [0, 1/2)
    for (long k = 0; k < 20; ++k) {
      Subdomain piece =
          Subdomain::make(hj.base, {Arc{0, q(k, 20, b), q(k, 20, b) + q(1, 40, b)}});
      bool commutes = commutator(hj.sigma, hj_tau_for(hj, piece)).is_identity();
      CHECK(commutes == !piece.intersects(hj.i0));
      CHECK(commutes == (k >= 10));
    }
    // and a straddling arc meets the support even though its start is outside
    Subdomain straddle = Subdomain::make(hj.base, {Arc{0, q(9, 20, b), q(21, 40, b)}});
    CHECK(!commutator(hj.sigma, hj_tau_for(hj, straddle)).is_identity());

    // [h tau, tau'] = [h, tau'] for flips tau, tau' and any h
    Subdomain k1 = Subdomain::make(hj.base, {Arc{1, q(1, 10, b), q(2, 5, b)}});
    Subdomain k2 = Subdomain::make(hj.base, {Arc{0, q(1, 3, b), q(3, 5, b)}});
    std::vector<Iet> hs = {hj.sigma, hj.rot, hj.sigma.compose(hj.rot),
                           hj.rot.inverse().compose(hj.tau)};
    for (const Iet& h : hs)
      CHECK(commutator(h.compose(hj_tau_for(hj, k1)), hj_tau_for(hj, k2)) ==
            commutator(h, hj_tau_for(hj, k2)));
  }

  TEST_CASE("H_J normal forms: base cases and round-trips") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    HjBuild hj = build_hj({Arc{0, q(0, 1, b), q(1, 5, b)}}, alpha);

    HjElement e = hj_normal_form(hj, Iet::identity(hj.domain));
    CHECK(e.n == 0);
    CHECK(e.f.empty());
    CHECK(e.tau.is_empty());

    HjElement t = hj_normal_form(hj, hj.tau);
    CHECK(t.n == 0);
    CHECK(t.f.empty());
    CHECK(t.tau == hj.j0);

    // conjugation by R moves the flip support forward by alpha
    HjElement rt = hj_normal_form(hj, hj.rot.compose(hj.tau).compose(hj.rot.inverse()));
    CHECK(rt.n == 0);
    CHECK(rt.f.empty());
    CHECK(rt.tau == hj.j0.translated(alpha));

    // sigma R = R^1 S_f with the lamp one step behind the origin
    HjElement sr = hj_normal_form(hj, hj.sigma.compose(hj.rot));
    CHECK(sr.n == 1);
    CHECK(sr.f == std::map<long, unsigned>{{-1, 1}});
    CHECK(sr.tau.is_empty());
    CHECK(sr.realized == hj.sigma.compose(hj.rot));
    CHECK(hj_evaluate(hj, 1, {{-1, 1}}, Subdomain::empty(hj.base)) ==
          hj.sigma.compose(hj.rot));

    // things outside H_J are rejected loudly: a rotation of one circle only,
    // and a synchronized rotation by half the angle
    CHECK_THROWS_WITH_AS(hj_normal_form(hj, rotation(hj.domain, 0, alpha)),
                         doctest::Contains("synchronized"), Error);
    CHECK_THROWS_WITH_AS(
        hj_normal_form(hj, synchronized_rotation(hj.domain, alpha.scaled(Rational(1, 2)))),
        doctest::Contains("not an H_J element"), Error);
  }

  TEST_CASE("H_J normal forms are sound on the whole radius-5 ball") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    HjBuild hj = build_hj({Arc{0, q(1, 10, b), q(3, 10, b)}}, alpha);
    BallResult ball5 = ball(hj.group, 5);
    REQUIRE(ball5.complete);
    CHECK(ball5.elements.size() > 200);
    for (const Iet& h : ball5.elements) {
      HjElement nf = hj_normal_form(hj, h);
      CHECK(nf.realized == h);
    }
  }

  TEST_CASE("H_J semidirect product law, computed symbolically, matches composition") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    HjBuild hj = build_hj({Arc{0, q(0, 1, b), q(1, 5, b)}}, alpha);
    Subdomain t1 = hj.j0;
    Subdomain t2 = Subdomain::make(hj.base, {Arc{2, q(1, 4, b), q(1, 2, b)}})
                       .unite(hj.j0.translated(alpha));

    struct Abstract {
      long n;
      std::map<long, unsigned> f;
      Subdomain tau;
    };
    std::vector<Abstract> sample = {
        {0, {}, t1},
        {1, {{-1, 1}}, Subdomain::empty(hj.base)},
        {-2, {{0, 2}, {1, 1}}, t2},
        {3, {{-2, 1}, {2, 2}}, t1.unite(t2)},
    };
    for (const Abstract& x : sample)
      for (const Abstract& y : sample) {
        Iet hx = hj_evaluate(hj, x.n, x.f, x.tau);
        Iet hy = hj_evaluate(hj, y.n, y.f, y.tau);
        // (n1, f1, T1)(n2, f2, T2) = (n1+n2, f1(.+n2) + f2, g2^-1(T1) symdiff T2)
        // with g2 = R^n2 S_f2 acting on the base domain.
        std::map<long, unsigned> f;
        for (const auto& [i, v] : x.f) f[i - y.n] = v;
        for (const auto& [i, v] : y.f) {
          unsigned sum = (f.count(i) ? f[i] : 0) + v;
          if (sum % 3 == 0)
            f.erase(i);
          else
            f[i] = sum % 3;
        }
        Iet g2 = synchronized_rotation(hj.base, alpha.scaled(Rational(y.n)));
        for (const auto& [i, v] : y.f)
          for (unsigned rep = 0; rep < v; ++rep) g2 = g2.compose(base_sigma(hj, i));
        Subdomain tau = g2.preimage_of(x.tau).sym_diff(y.tau);

        HjElement nf = hj_normal_form(hj, hx.compose(hy));
        CHECK(nf.n == x.n + y.n);
        CHECK(nf.f == f);
        CHECK(nf.tau == tau);
      }
  }

  TEST_CASE("commutation set agrees with the arithmetic predicate and its density") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    // J inside I: 0 is in the set
    HjBuild hj = build_hj({Arc{0, q(0, 1, b), q(1, 5, b)}}, alpha);
    CommutationSet cs = commutation_set(hj, 1000);  // throws if the two routes disagree
    REQUIRE(!cs.set.empty());
    CHECK(cs.set.front() == 0);
    CHECK(cs.frequency == Rational(static_cast<long>(cs.set.size()), 1000));
    // long-run frequency near |J - I| = 7/10
    double freq = cs.frequency.get_d();
    CHECK(freq > 0.65);
    CHECK(freq < 0.75);

    // J disjoint from I: 0 is not in the set
    HjBuild hj2 = build_hj({Arc{0, q(3, 5, b), q(7, 10, b)}}, alpha);
    CommutationSet cs2 = commutation_set(hj2, 50);
    CHECK(std::find(cs2.set.begin(), cs2.set.end(), 0) == cs2.set.end());
  }

  TEST_CASE("difference set measures by exact arc arithmetic") {
    BasisPtr b = alpha_basis();
    DomainPtr circle = Domain::make({{"c", ComponentKind::Circle, q(1, 1, b)}}, b);
    auto sub = [&](std::vector<Arc> arcs) { return Subdomain::make(circle, std::move(arcs)); };
    Subdomain i = sub({Arc{0, q(0, 1, b), q(1, 2, b)}});

    CHECK(difference_set_measure(Subdomain::empty(circle), i) == q(0, 1, b));
    CHECK(difference_set_measure(sub({Arc{0, q(0, 1, b), q(1, 5, b)}}), i) == q(7, 10, b));
    CHECK(difference_set_measure(i, i) == q(1, 1, b));
    // |J - I| = 1/2 + |J| whenever J is a single short arc
    for (long k = 1; k <= 4; ++k) {
      Subdomain j = sub({Arc{0, q(k, 9, b), q(k, 9, b) + q(k, 11, b)}});
      CHECK(difference_set_measure(j, i) == q(1, 2, b) + q(k, 11, b));
    }
    // two arcs, worked by hand: [0,1/10) u [3/10,2/5) minus [0,1/2) covers 9/10
    Subdomain j2 = sub({Arc{0, q(0, 1, b), q(1, 10, b)}, Arc{0, q(3, 10, b), q(2, 5, b)}});
    CHECK(difference_set_measure(j2, i) == q(9, 10, b));
  }

  TEST_CASE("distinguishing invariants: equal, fresh symbol, and rational shift") {
    BasisPtr b = two_symbol_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    ExactReal beta = ExactReal::symbol("beta", b);
    ExactReal zero = q(0, 1, b);

    DistinguishReport same = distinguish_invariant({zero, q(1, 5, b)}, {zero, q(1, 5, b)}, alpha);
    CHECK(!same.invariants_differ);
    CHECK(same.invariant1 == q(7, 10, b));
    CHECK(same.span.has_value());
    CHECK(!same.consistent_with_distinct);

    // beta is not in the span of {1, alpha, 0, 1/5}: evidence for distinctness
    DistinguishReport fresh = distinguish_invariant({zero, beta}, {zero, q(1, 5, b)}, alpha);
    CHECK(fresh.invariants_differ);
    CHECK(!fresh.span.has_value());
    CHECK(fresh.consistent_with_distinct);

    // 1/5 + alpha is in the span, read off as 1/5 * 1 + 1 * alpha
    DistinguishReport shifted =
        distinguish_invariant({zero, q(1, 5, b) + alpha}, {zero, q(1, 5, b)}, alpha);
    REQUIRE(shifted.span.has_value());
    CHECK(*shifted.span == std::vector<Rational>{Rational(1, 5), Rational(1), Rational(0), Rational(0)});
    CHECK(!shifted.consistent_with_distinct);
    CHECK(shifted.invariant1 == q(1, 1, b));  // |J1| + |I| exceeds the circle
  }

  TEST_CASE("non-abelian fibers break the wreath relations; abelian ones do not") {
    BasisPtr b = alpha_basis();
    ExactReal alpha = ExactReal::symbol("alpha", b);
    GroupTable s3 = GroupTable::symmetric3();
    auto action = symmetric3_action();

    // |I| = 1/2 forces an overlap at n = 1
    ObstructionReport r1 =
        wreath_obstruction_witness(s3, action, alpha, {q(0, 1, b), q(1, 2, b)}, 3);
    CHECK(r1.found);
    CHECK(r1.n == 1);
    CHECK(r1.overlaps.front() == std::pair<long, bool>{1, true});
    CHECK(r1.g != 0);
    CHECK(r1.h != 0);

    // I shrunk below the rotation step: first overlap (and witness) at n = 2
    ObstructionReport r2 =
        wreath_obstruction_witness(s3, action, alpha, {q(0, 1, b), q(1, 5, b)}, 3);
    CHECK(r2.found);
    CHECK(r2.n == 2);
    REQUIRE(r2.overlaps.size() == 2);
    CHECK(!r2.overlaps[0].second);
    CHECK(r2.overlaps[1].second);

    // abelian control: overlaps happen but every commutator is trivial
    GroupTable z3 = GroupTable::cyclic(3);
    std::vector<std::vector<std::uint32_t>> regular(3, std::vector<std::uint32_t>(3));
    for (std::uint32_t g = 0; g < 3; ++g)
      for (std::uint32_t c = 0; c < 3; ++c) regular[g][c] = (g + c) % 3;
    ObstructionReport rc =
        wreath_obstruction_witness(z3, regular, alpha, {q(0, 1, b), q(1, 2, b)}, 4);
    CHECK(!rc.found);
    CHECK(rc.overlaps.size() == 4);

    std::vector<std::vector<std::uint32_t>> broken = action;
    std::swap(broken[1], broken[2]);
    CHECK_THROWS_WITH_AS(
        wreath_obstruction_witness(s3, broken, alpha, {q(0, 1, b), q(1, 2, b)}, 2),
        doctest::Contains("homomorphism"), Error);
  }
}
