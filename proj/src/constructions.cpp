#include "ietk/constructions.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace ietk {

namespace {

// Rank over Q of the symbol-coefficient rows of `xs` (the unit part is
// ignored: we are testing independence of {1, x_1, ..., x_k}).
std::size_t symbol_rank(const std::vector<ExactReal>& xs) {
  std::size_t width = 0;
  for (const auto& x : xs)
    for (const auto& [i, q] : x.sym_coeffs()) width = std::max(width, i + 1);
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : xs) {
    std::vector<Rational> row(width, Rational(0));
    for (const auto& [i, q] : x.sym_coeffs()) row[i] = q;
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational m = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < width; ++c) rows[r][c] -= m * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

void require_independent_angles(const std::vector<ExactReal>& angles, const BasisPtr& basis,
                                bool allow_dependent) {
  if (allow_dependent) return;
  if (!basis->independent() || symbol_rank(angles) != angles.size())
    throw Error("angles not declared independent in the basis");
}

// Duplicate an Iet on `base` across the q copies of a product domain whose
// component q*|base|+c is the q-th copy of base component c.
Iet diagonal_lift(const DomainPtr& prod, const Iet& t, std::size_t copies) {
  auto nbase = static_cast<std::uint32_t>(t.domain()->size());
  std::vector<Cell> cells;
  for (std::uint32_t q = 0; q < copies; ++q)
    for (const Cell& c : t.cells())
      cells.push_back(Cell{q * nbase + c.src_c, c.src_lo, c.src_hi, q * nbase + c.dst_c, c.dst_lo});
  return Iet::from_cells(prod, std::move(cells));
}

std::vector<std::pair<ExactReal, ExactReal>> arc_pairs(const Subdomain& s) {
  std::vector<std::pair<ExactReal, ExactReal>> out;
  for (const Arc& a : s.arcs()) out.emplace_back(a.start, a.end);
  return out;
}

}  // namespace

// --- A wr Z^k -----------------------------------------------------------------

bool WreathNormalForm::trivial() const {
  if (!lamp.empty()) return false;
  return std::all_of(shift.begin(), shift.end(), [](long n) { return n == 0; });
}

namespace {

LampSpec checked_lamp_spec(LampSpec spec) {
  if (spec.factor_orders.empty()) throw Error("the lamp group needs at least one cyclic factor");
  for (unsigned m : spec.factor_orders)
    if (m < 2) throw Error("cyclic factor orders must be at least 2");
  if (spec.angles.empty()) throw Error("the shift group needs at least one rotation angle");
  if (!spec.basis) throw Error("null basis");
  require_independent_angles(spec.angles, spec.basis, spec.allow_dependent_angles);

  ExactReal one = ExactReal::rational(1, spec.basis);
  if (spec.support.empty())
    spec.support = {{ExactReal::rational(0, spec.basis), ExactReal::rational(1, 2, spec.basis)}};
  // canonicalize the support once (validates the arcs, splits wraps)
  DomainPtr scratch = Domain::make({{"c", ComponentKind::Circle, one}}, spec.basis);
  std::vector<Arc> raw;
  for (const auto& [s, e] : spec.support) raw.push_back(Arc{0, s, e});
  spec.support = arc_pairs(Subdomain::make(scratch, std::move(raw)));
  if (spec.support.empty()) throw Error("the lamp support is empty");
  return spec;
}

std::size_t lamp_order(const LampSpec& spec) {
  std::size_t n = 1;
  for (unsigned m : spec.factor_orders) n *= m;
  return n;
}

DomainPtr lamp_domain(const LampSpec& spec, std::size_t a_order) {
  std::vector<Component> comps;
  for (std::size_t a = 0; a < a_order; ++a)
    comps.push_back({std::to_string(a) + ":c", ComponentKind::Circle,
                     ExactReal::rational(1, spec.basis)});
  return Domain::make(std::move(comps), spec.basis);
}

FinGenGroup lamp_group(const Lamplighter& ll) {
  const LampSpec& spec = ll.spec();
  std::vector<std::pair<std::string, Iet>> gens;
  for (std::size_t i = 0; i < spec.factor_orders.size(); ++i) {
    std::vector<unsigned> e(spec.factor_orders.size(), 0);
    e[i] = 1;
    std::string name = spec.factor_orders.size() == 1 ? "s" : "s" + std::to_string(i + 1);
    gens.emplace_back(name, ll.sigma(e, std::vector<long>(spec.angles.size(), 0)));
  }
  for (std::size_t j = 0; j < spec.angles.size(); ++j) {
    std::string name = spec.angles.size() == 1 ? "R" : "R" + std::to_string(j + 1);
    std::vector<long> n(spec.angles.size(), 0);
    n[j] = 1;
    gens.emplace_back(name, ll.rotation_power(n));
  }
  return FinGenGroup(ll.domain(), std::move(gens));
}

}  // namespace

Lamplighter::Lamplighter(LampSpec spec)
    : spec_(checked_lamp_spec(std::move(spec))),
      a_order_(lamp_order(spec_)),
      dom_(lamp_domain(spec_, a_order_)),
      group_(lamp_group(*this)) {}

std::vector<unsigned> Lamplighter::a_digits(std::size_t a) const {
  std::vector<unsigned> d;
  for (unsigned m : spec_.factor_orders) {
    d.push_back(static_cast<unsigned>(a % m));
    a /= m;
  }
  return d;
}

std::size_t Lamplighter::a_index(const std::vector<unsigned>& digits) const {
  if (digits.size() != spec_.factor_orders.size()) throw Error("lamp digit count mismatch");
  std::size_t a = 0, place = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= spec_.factor_orders[i]) throw Error("lamp digit exceeds its factor order");
    a += digits[i] * place;
    place *= spec_.factor_orders[i];
  }
  return a;
}

Iet Lamplighter::sigma(const std::vector<unsigned>& a, const std::vector<long>& pos) const {
  if (pos.size() != spec_.angles.size()) throw Error("lamp position rank mismatch");
  (void)a_index(a);  // validates the digits against the factor orders
  std::map<std::uint32_t, std::uint32_t> comp_map;
  for (std::size_t g = 0; g < a_order_; ++g) {
    std::vector<unsigned> d = a_digits(g);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (d[i] + a[i]) % spec_.factor_orders[i];
    comp_map[static_cast<std::uint32_t>(g)] = static_cast<std::uint32_t>(a_index(d));
  }
  ExactReal shift = dom_->zero();
  for (std::size_t j = 0; j < pos.size(); ++j)
    shift = shift + spec_.angles[j].scaled(Rational(pos[j]));
  std::vector<std::pair<ExactReal, ExactReal>> arcs;
  for (const auto& [s, e] : spec_.support) {
    ExactReal start = mod_interval(s + shift, ExactReal::rational(1, spec_.basis));
    arcs.emplace_back(start, start + (e - s));  // end past 1 is wrap notation
  }
  return fiber_permutation(dom_, comp_map, arcs);
}

Iet Lamplighter::rotation_power(const std::vector<long>& n) const {
  if (n.size() != spec_.angles.size()) throw Error("shift rank mismatch");
  ExactReal angle = dom_->zero();
  for (std::size_t j = 0; j < n.size(); ++j)
    angle = angle + spec_.angles[j].scaled(Rational(n[j]));
  return synchronized_rotation(dom_, angle);
}

Iet Lamplighter::evaluate(const WreathNormalForm& nf) const {
  // h = (prod over lamps sigma_{a, pos}) followed by the shift rotation;
  // the lamp factors commute, so the product order is immaterial.
  Iet h = rotation_power(nf.shift);
  for (const auto& [pos, a] : nf.lamp) h = sigma(a, pos).compose(h);
  return h;
}

namespace {

// Right-multiplication by generators in A wr Z^k, in the same normal form
// the realization uses (lamps first, then the shift): appending a lamp
// generator lights it at the current shift position.
struct AbstractWreath {
  const LampSpec& spec;

  void mul_lamp(WreathNormalForm& w, std::size_t factor, int step) const {
    const std::vector<long>& at = w.shift;
    auto it = w.lamp.find(at);
    if (it == w.lamp.end())
      it = w.lamp.emplace(at, std::vector<unsigned>(spec.factor_orders.size(), 0)).first;
    unsigned m = spec.factor_orders[factor];
    it->second[factor] = (it->second[factor] + m + step) % m;
    if (std::all_of(it->second.begin(), it->second.end(), [](unsigned v) { return v == 0; }))
      w.lamp.erase(it);
  }
  void mul_shift(WreathNormalForm& w, std::size_t axis, int step) const {
    w.shift[axis] += step;
  }
};

struct WreathGen {
  std::string name;
  bool is_lamp;
  std::size_t index;
  int step;
};

std::vector<WreathGen> wreath_gens(const LampSpec& spec) {
  std::vector<WreathGen> gens;
  bool one_factor = spec.factor_orders.size() == 1;
  for (std::size_t i = 0; i < spec.factor_orders.size(); ++i) {
    std::string name = one_factor ? "s" : "s" + std::to_string(i + 1);
    gens.push_back({name, true, i, +1});
    if (spec.factor_orders[i] > 2) gens.push_back({name + "^-1", true, i, -1});
  }
  bool one_axis = spec.angles.size() == 1;
  for (std::size_t j = 0; j < spec.angles.size(); ++j) {
    std::string name = one_axis ? "R" : "R" + std::to_string(j + 1);
    gens.push_back({name, false, j, +1});
    gens.push_back({name + "^-1", false, j, -1});
  }
  return gens;
}

struct FormKey {
  std::map<std::vector<long>, std::vector<unsigned>> lamp;
  std::vector<long> shift;
  bool operator<(const FormKey& o) const {
    if (lamp != o.lamp) return lamp < o.lamp;
    return shift < o.shift;
  }
};

}  // namespace

WreathCheckReport verify_wreath_embedding(const LampSpec& spec, int depth,
                                          std::size_t max_forms) {
  if (depth < 1) throw Error("embedding check needs depth at least 1");
  Lamplighter ll(spec);
  AbstractWreath law{ll.spec()};
  std::vector<WreathGen> gens = wreath_gens(ll.spec());
  std::vector<Iet> gen_iets;
  for (const WreathGen& g : gens) {
    std::vector<long> pos(ll.spec().angles.size(), 0);
    if (g.is_lamp) {
      std::vector<unsigned> a(ll.spec().factor_orders.size(), 0);
      unsigned m = ll.spec().factor_orders[g.index];
      a[g.index] = (m + g.step) % m;
      gen_iets.push_back(ll.sigma(a, pos));
    } else {
      pos[g.index] = g.step;
      gen_iets.push_back(ll.rotation_power(pos));
    }
  }

  WreathCheckReport report;
  struct Node {
    WreathNormalForm form;
    Iet realized;
    std::vector<std::string> word;
  };
  WreathNormalForm start;
  start.shift.assign(ll.spec().angles.size(), 0);
  std::deque<Node> queue{{start, Iet::identity(ll.domain()), {}}};
  std::set<FormKey> seen{{start.lamp, start.shift}};

  auto check = [&](const Node& n) {
    ++report.forms_checked;
    if (n.form.trivial() == n.realized.is_identity()) return true;
    report.ok = false;
    report.witness = n.word.empty() ? std::vector<std::string>{"<identity>"} : n.word;
    return false;
  };

  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    if (!check(n)) return report;
    if (n.word.size() >= static_cast<std::size_t>(depth)) continue;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      WreathNormalForm child = n.form;
      if (gens[g].is_lamp)
        law.mul_lamp(child, gens[g].index, gens[g].step);
      else
        law.mul_shift(child, gens[g].index, gens[g].step);
      FormKey key{child.lamp, child.shift};
      if (seen.count(key)) continue;
      if (seen.size() >= max_forms) {
        report.exhaustive = false;
        goto sample;  // ball too big: fall back to random words
      }
      seen.insert(std::move(key));
      queue.push_back(Node{std::move(child), n.realized.compose(gen_iets[g]),
                           [&] {
                             auto w = n.word;
                             w.push_back(gens[g].name);
                             return w;
                           }()});
    }
  }
  return report;

sample:
  std::mt19937 rng(20260814);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int trial = 0; trial < 512; ++trial) {
    Node n{start, Iet::identity(ll.domain()), {}};
    for (int step = 0; step < depth; ++step) {
      std::size_t g = pick(rng);
      if (gens[g].is_lamp)
        law.mul_lamp(n.form, gens[g].index, gens[g].step);
      else
        law.mul_shift(n.form, gens[g].index, gens[g].step);
      n.realized = n.realized.compose(gen_iets[g]);
      n.word.push_back(gens[g].name);
    }
    if (!check(n)) return report;
  }
  return report;
}

// --- lamplighter-like extensions ----------------------------------------------

LlLike build_ll_like(const FinGenGroup& g, const std::vector<unsigned>& a_orders,
                     const Subdomain& j) {
  if (a_orders.empty()) throw Error("the lamp group needs at least one cyclic factor");
  for (unsigned m : a_orders)
    if (m < 2) throw Error("cyclic factor orders must be at least 2");
  const DomainPtr& base = g.domain();
  if (!same_domain(j.domain(), base)) throw Error("lamp support lives off the base domain");

  std::size_t a_order = 1;
  for (unsigned m : a_orders) a_order *= m;
  std::vector<Component> comps;
  for (std::size_t a = 0; a < a_order; ++a)
    for (std::size_t c = 0; c < base->size(); ++c) {
      const Component& bc = base->component(c);
      comps.push_back({std::to_string(a) + ":" + bc.label, bc.kind, bc.length});
    }
  DomainPtr dom = Domain::make(std::move(comps), base->basis());

  auto digits = [&](std::size_t a) {
    std::vector<unsigned> d;
    for (unsigned m : a_orders) {
      d.push_back(static_cast<unsigned>(a % m));
      a /= m;
    }
    return d;
  };
  auto index = [&](const std::vector<unsigned>& d) {
    std::size_t a = 0, place = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      a += d[i] * place;
      place *= a_orders[i];
    }
    return a;
  };

  std::vector<std::pair<std::string, Iet>> gens;
  for (const auto& [name, iet] : g.generators())
    gens.emplace_back(name, diagonal_lift(dom, iet, a_order));
  auto nbase = static_cast<std::uint32_t>(base->size());
  for (std::size_t b = 1; b < a_order; ++b) {
    // sigma_b adds b to the lamp coordinate over each arc of J
    std::vector<unsigned> bd = digits(b);
    std::vector<Cell> cells;
    for (std::size_t a = 0; a < a_order; ++a) {
      std::vector<unsigned> d = digits(a);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = (d[i] + bd[i]) % a_orders[i];
      auto from = static_cast<std::uint32_t>(a * nbase);
      auto to = static_cast<std::uint32_t>(index(d) * nbase);
      for (std::uint32_t c = 0; c < nbase; ++c) {
        Subdomain on_c = j.intersect(Subdomain::of_component(base, c));
        for (const Arc& arc : on_c.arcs()) cells.push_back(Cell{from + c, arc.start, arc.end, to + c, arc.start});
        Subdomain rest = Subdomain::of_component(base, c).setminus(on_c);
        for (const Arc& arc : rest.arcs())
          cells.push_back(Cell{from + c, arc.start, arc.end, from + c, arc.start});
      }
    }
    gens.emplace_back("s" + std::to_string(b), Iet::from_cells(dom, std::move(cells)));
  }
  FinGenGroup group(dom, std::move(gens));
  return LlLike{base, dom, std::move(group)};
}

// --- H_J ------------------------------------------------------------------------

namespace {

// Flip the Z/2 coordinate of the product domain over k (a subdomain of the base).
Iet fiber_flip(const DomainPtr& base, const DomainPtr& dom, const Subdomain& k) {
  if (!same_domain(k.domain(), base)) throw Error("flip support lives off the base domain");
  auto nbase = static_cast<std::uint32_t>(base->size());
  Iet t = Iet::identity(dom);
  for (std::uint32_t c = 0; c < nbase; ++c) {
    auto on_c = arc_pairs(k.intersect(Subdomain::of_component(base, c)));
    if (on_c.empty()) continue;
    t = fiber_permutation(dom, {{c, nbase + c}, {nbase + c, c}}, on_c).compose(t);
  }
  return t;
}

}  // namespace

HjBuild build_hj(const std::vector<Arc>& j_arcs, const ExactReal& alpha) {
  for (const Arc& a : j_arcs)
    if (a.comp != 0) throw Error("tau support must lie on the designated base circle");

  LampSpec base_spec;
  base_spec.factor_orders = {3};
  base_spec.angles = {alpha};
  base_spec.basis = alpha.basis();
  Lamplighter base_ll(base_spec);
  DomainPtr base = base_ll.domain();

  std::vector<Component> comps;
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t c = 0; c < base->size(); ++c) {
      const Component& bc = base->component(c);
      comps.push_back({std::to_string(t) + ":" + bc.label, bc.kind, bc.length});
    }
  DomainPtr dom = Domain::make(std::move(comps), base->basis());

  Subdomain i0 =
      Subdomain::make(base, {Arc{0, base->zero(), ExactReal::rational(1, 2, base->basis())}});
  Subdomain j0 = Subdomain::make(base, j_arcs);
  Iet sigma = diagonal_lift(dom, base_ll.sigma({1}, {0}), 2);
  Iet rot = diagonal_lift(dom, base_ll.rotation_power({1}), 2);
  Iet tau = fiber_flip(base, dom, j0);
  FinGenGroup group(dom, {{"s", sigma}, {"R", rot}, {"t", tau}});
  return HjBuild{base,          dom, std::move(group), alpha, std::move(i0),
                 std::move(j0), std::move(sigma), std::move(rot), std::move(tau)};
}

Iet hj_tau_for(const HjBuild& hj, const Subdomain& k) { return fiber_flip(hj.base, hj.domain, k); }

Iet hj_evaluate(const HjBuild& hj, long n, const std::map<long, unsigned>& f,
                const Subdomain& tau) {
  // h = R^n S_f tau_T: the flip first, then the Z/3 lamps, then the rotation.
  Iet h = hj_tau_for(hj, tau);
  for (const auto& [i, v] : f) {
    if (v == 0 || v > 2) throw Error("lamp values must be 1 or 2");
    Subdomain support = hj.i0.translated(hj.alpha.scaled(Rational(i)));
    std::map<std::uint32_t, std::uint32_t> comp_map;
    for (std::uint32_t t = 0; t < 2; ++t)
      for (std::uint32_t s = 0; s < 3; ++s) comp_map[t * 3 + s] = t * 3 + (s + v) % 3;
    h = fiber_permutation(hj.domain, comp_map, arc_pairs(support)).compose(h);
  }
  ExactReal one = ExactReal::rational(1, hj.base->basis());
  return synchronized_rotation(hj.domain, mod_interval(hj.alpha.scaled(Rational(n)), one))
      .compose(h);
}

namespace {

// Piecewise-constant data read off one source component of a translation-free
// Iet on the H_J product domain: on [start, end) the element adds `lamp` to
// the Z/3 coordinate and `flip` to the Z/2 coordinate.
struct FiberStep {
  ExactReal start, end;
  unsigned lamp;
  unsigned flip;
};

std::vector<FiberStep> read_fiber_row(const Iet& g, std::uint32_t src) {
  std::vector<FiberStep> row;
  unsigned t = src / 3, s = src % 3;
  for (const Cell& c : g.cells()) {
    if (c.src_c != src) continue;
    if (!(c.dst_lo == c.src_lo))
      throw Error("element does not act by a synchronized rotation on the circles");
    unsigned t2 = c.dst_c / 3, s2 = c.dst_c % 3;
    FiberStep step{c.src_lo, c.src_hi, (s2 + 3 - s) % 3, (t2 + 2 - t) % 2};
    if (!row.empty() && row.back().lamp == step.lamp && row.back().flip == step.flip &&
        row.back().end == step.start)
      row.back().end = step.end;  // merge cell splits that carry no fiber jump
    else
      row.push_back(std::move(step));
  }
  return row;
}

}  // namespace

HjElement hj_normal_form(const HjBuild& hj, const Iet& h) {
  if (!same_domain(h.domain(), hj.domain)) throw Error("element lives off the H_J domain");
  BasisPtr basis = hj.base->basis();
  ExactReal one = ExactReal::rational(1, basis);

  // 1. The rotation power: every point moves by n*alpha on its circle.
  const Cell& first = h.cells().front();
  ExactReal delta = mod_interval(first.dst_lo - first.src_lo, one);
  auto coords = in_q_span(delta, {one, hj.alpha});
  if (!coords || (*coords)[1].get_den() != 1)
    throw Error("translation is not a power of the rotation: not an H_J element");
  long n = (*coords)[1].get_num().get_si();

  Iet g = synchronized_rotation(hj.domain, mod_interval(hj.alpha.scaled(Rational(-n)), one))
              .compose(h);

  // 2. The fiber action, read row by row: the Z/3 jump profile must agree
  // across all six components, the Z/2 profile across the two t-rows.
  std::vector<std::vector<FiberStep>> rows;
  for (std::uint32_t c = 0; c < 6; ++c) rows.push_back(read_fiber_row(g, c));
  for (std::uint32_t s = 0; s < 3; ++s) {
    const auto &r0 = rows[s], &r1 = rows[3 + s];
    if (r0.size() != r1.size())
      throw Error("fiber action differs between the two flip rows: not an H_J element");
    for (std::size_t i = 0; i < r0.size(); ++i)
      if (!(r0[i].start == r1[i].start) || r0[i].lamp != r1[i].lamp || r0[i].flip != r1[i].flip)
        throw Error("fiber action differs between the two flip rows: not an H_J element");
  }

  // 3. The Z/2 part: the flip support, per base circle.
  std::vector<Arc> tau_arcs;
  for (std::uint32_t s = 0; s < 3; ++s)
    for (const FiberStep& step : rows[s])
      if (step.flip) tau_arcs.push_back(Arc{s, step.start, step.end});
  Subdomain tau = Subdomain::make(hj.base, std::move(tau_arcs));

  // 4. The Z/3 part, by reading the jumps of the lamp profile.  Every lamp
  // support is [0,1/2) + i*alpha, so each jump point decomposes as
  // q + i*alpha with q an integer (left endpoint, jump +f(i)) or a
  // half-integer (right endpoint, jump -f(i)); the two reads must agree.
  std::map<long, unsigned> from_left, from_right;
  for (std::uint32_t s = 0; s < 3; ++s) {
    const auto& row = rows[s];
    std::map<long, unsigned> left, right;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const FiberStep& prev = row[(i + row.size() - 1) % row.size()];
      unsigned jump = (row[i].lamp + 3 - prev.lamp) % 3;
      if (jump == 0) continue;  // a flip-only breakpoint
      auto qi = in_q_span(row[i].start, {one, hj.alpha});
      if (!qi || (*qi)[1].get_den() != 1)
        throw Error("lamp breakpoint off the rotation orbit of the support: not an H_J element");
      long pos = (*qi)[1].get_num().get_si();
      const Rational& q = (*qi)[0];
      if (q.get_den() == 1)
        left[pos] = jump;  // q integral: a support left endpoint, F rises by f
      else if (q.get_den() == 2)
        right[pos] = 3 - jump;  // half-integral: a right endpoint, F falls by f
      else
        throw Error("lamp breakpoint off the support endpoints: not an H_J element");
    }
    if (s == 0) {
      from_left = std::move(left);
      from_right = std::move(right);
    } else if (left != from_left || right != from_right) {
      throw Error("lamp profile differs across the Z/3 rows: not an H_J element");
    }
  }
  if (from_left != from_right)
    throw Error("left and right lamp endpoint reads disagree: not an H_J element");

  // 5. The decomposition must reproduce the element exactly.
  Iet realized = hj_evaluate(hj, n, from_left, tau);
  if (!(realized == h))
    throw Error("decomposition does not reproduce the element: not an H_J element");
  return HjElement{n, std::move(from_left), std::move(tau), std::move(realized)};
}

CommutationSet commutation_set(const HjBuild& hj, long n_count) {
  if (n_count < 1) throw Error("the commutation set needs at least one index");
  BasisPtr basis = hj.base->basis();
  ExactReal one = ExactReal::rational(1, basis);

  // Precompute the open difference intervals of I - J: n is in the set
  // exactly when (J + n*alpha) meets I, i.e. n*alpha lies in some
  // (c - b, d - a) for arcs [a,b) of J and [c,d) of I.
  std::vector<std::pair<ExactReal, ExactReal>> windows;  // (lo, length)
  bool always = false;                                   // some window wraps onto itself
  for (const Arc& ja : hj.j0.arcs())
    for (const Arc& ia : hj.i0.arcs()) {
      ExactReal len = (ja.end - ja.start) + (ia.end - ia.start);
      if (cmp(len, one) == Ordering::GT) always = true;
      windows.emplace_back(ia.start - ja.end, len);
    }

  CommutationSet out;
  Iet sigma_inv = hj.sigma.inverse();
  Iet rot_inv = hj.rot.inverse();
  Iet conj = hj.tau;  // R^n tau R^-n, advanced incrementally
  ExactReal point = hj.base->zero();  // n*alpha mod 1
  for (long n = 0; n < n_count; ++n) {
    bool commutator = !hj.sigma.compose(conj).compose(sigma_inv).compose(conj).is_identity();
    bool predicate = always;
    for (const auto& [lo, len] : windows) {
      if (predicate) break;
      ExactReal y = mod_interval(point - lo, one);
      predicate = sign(y) > 0 && cmp(y, len) == Ordering::LT;
    }
    if (commutator != predicate)
      throw Error("internal: commutator test and difference-set predicate disagree at n=" +
                  std::to_string(n));
    if (commutator) out.set.push_back(n);
    conj = hj.rot.compose(conj).compose(rot_inv);
    point = mod_interval(point + hj.alpha, one);
  }
  out.frequency = Rational(static_cast<long>(out.set.size()), n_count);
  out.frequency.canonicalize();
  return out;
}

ExactReal difference_set_measure(const Subdomain& j, const Subdomain& i) {
  if (!same_domain(j.domain(), i.domain()))
    throw Error("difference set of subdomains of different domains");
  const DomainPtr& d = j.domain();
  if (j.is_empty()) return d->zero();
  if (i.is_empty()) return d->zero();
  std::uint32_t comp = j.arcs().front().comp;
  for (const Arc& a : j.arcs())
    if (a.comp != comp) throw Error("difference set needs both sets on one circle");
  for (const Arc& a : i.arcs())
    if (a.comp != comp) throw Error("difference set needs both sets on one circle");
  if (d->component(comp).kind != ComponentKind::Circle)
    throw Error("difference set is only defined on a circle");
  const ExactReal& len = d->component(comp).length;

  // {j - i}: one interval (a-d, b-c) per arc pair, of measure |J-arc|+|I-arc|;
  // endpoint conventions don't affect the measure, so spell them half-open.
  std::vector<Arc> arcs;
  for (const Arc& ja : j.arcs())
    for (const Arc& ia : i.arcs()) {
      ExactReal width = (ja.end - ja.start) + (ia.end - ia.start);
      if (cmp(width, len) != Ordering::LT) return Subdomain::of_component(d, comp).measure();
      ExactReal start = mod_interval(ja.start - ia.end, len);
      arcs.push_back(Arc{comp, start, start + width});  // wrap notation past len
    }
  return Subdomain::make(d, std::move(arcs)).measure();
}

DistinguishReport distinguish_invariant(const std::pair<ExactReal, ExactReal>& j1,
                                        const std::pair<ExactReal, ExactReal>& j2,
                                        const ExactReal& alpha) {
  BasisPtr basis = alpha.basis();
  ExactReal one = ExactReal::rational(1, basis);
  DomainPtr circle = Domain::make({{"c", ComponentKind::Circle, one}}, basis);
  Subdomain i = Subdomain::make(circle, {Arc{0, circle->zero(), ExactReal::rational(1, 2, basis)}});
  Subdomain s1 = Subdomain::make(circle, {Arc{0, j1.first, j1.second}});
  Subdomain s2 = Subdomain::make(circle, {Arc{0, j2.first, j2.second}});

  ExactReal inv1 = difference_set_measure(s1, i);
  ExactReal inv2 = difference_set_measure(s2, i);
  bool differ = !(inv1 == inv2);
  auto span = in_q_span(j1.second - j1.first, {one, alpha, j2.first, j2.second});
  bool distinct = !span.has_value();
  return DistinguishReport{std::move(inv1), std::move(inv2), differ, std::move(span), distinct};
}

// --- obstruction for non-abelian fibers ----------------------------------------

ObstructionReport wreath_obstruction_witness(const GroupTable& f_table,
                                             const std::vector<std::vector<std::uint32_t>>& action,
                                             const ExactReal& angle,
                                             const std::pair<ExactReal, ExactReal>& i_arc,
                                             long depth) {
  if (action.size() != f_table.order()) throw Error("one fiber permutation per group element");
  std::size_t fibers = action.empty() ? 0 : action[0].size();
  for (const auto& p : action) {
    if (p.size() != fibers) throw Error("fiber permutations of unequal size");
    std::vector<bool> hit(fibers, false);
    for (std::uint32_t img : p) {
      if (img >= fibers || hit[img]) throw Error("fiber action row is not a permutation");
      hit[img] = true;
    }
  }
  for (std::uint32_t a = 0; a < f_table.order(); ++a)
    for (std::uint32_t b = 0; b < f_table.order(); ++b)
      for (std::size_t c = 0; c < fibers; ++c)
        if (action[f_table.times(a, b)][c] != action[a][action[b][c]])
          throw Error("fiber action is not a homomorphism of the table");

  BasisPtr basis = angle.basis();
  ExactReal one = ExactReal::rational(1, basis);
  std::vector<Component> comps;
  for (std::size_t c = 0; c < fibers; ++c)
    comps.push_back({"f" + std::to_string(c), ComponentKind::Circle, one});
  DomainPtr dom = Domain::make(std::move(comps), basis);

  std::vector<Iet> lamp;
  for (std::uint32_t g = 0; g < f_table.order(); ++g) {
    std::map<std::uint32_t, std::uint32_t> m;
    for (std::size_t c = 0; c < fibers; ++c) m[static_cast<std::uint32_t>(c)] = action[g][c];
    lamp.push_back(fiber_permutation(dom, m, {i_arc}));
  }
  Iet rot = synchronized_rotation(dom, angle);
  Iet rot_inv = rot.inverse();
  Subdomain i0 = Subdomain::make(dom, {Arc{0, i_arc.first, i_arc.second}});

  ObstructionReport out;
  Iet rn = Iet::identity(dom);
  Iet rn_inv = rn;
  for (long n = 1; n <= depth; ++n) {
    rn = rot.compose(rn);
    rn_inv = rn_inv.compose(rot_inv);
    bool overlap = i0.translated(angle.scaled(Rational(n))).intersects(i0);
    out.overlaps.emplace_back(n, overlap);
    if (!overlap) continue;  // disjoint supports: the wreath relation holds
    for (std::uint32_t g = 1; g < f_table.order(); ++g) {
      Iet conj = rn.compose(lamp[g]).compose(rn_inv);
      Iet conj_inv = conj.inverse();
      for (std::uint32_t h = 1; h < f_table.order(); ++h) {
        if (conj.compose(lamp[h]).compose(conj_inv).compose(lamp[f_table.inverse(h)])
                .is_identity())
          continue;
        out.found = true;
        out.n = n;
        out.g = g;
        out.h = h;
        return out;
      }
    }
  }
  return out;
}

}  // namespace ietk
