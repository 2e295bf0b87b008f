#include "ietk/imanishi.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_set>

namespace ietk {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  // Keep the smaller index as root so roots enumerate classes in domain order.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

/// Closure of a point under the generators; nullopt when it exceeds `guard`.
std::optional<std::vector<Point>> closed_orbit(const std::vector<const Iet*>& sym,
                                               const Point& start, std::size_t guard) {
  std::unordered_set<Point, PointHash> seen{start};
  std::vector<Point> out{start};
  std::queue<Point> bfs;
  bfs.push(start);
  while (!bfs.empty()) {
    Point p = bfs.front();
    bfs.pop();
    for (const Iet* t : sym) {
      Point q = t->apply(p);
      if (!seen.insert(q).second) continue;
      if (out.size() >= guard) return std::nullopt;
      out.push_back(q);
      bfs.push(q);
    }
  }
  return out;
}

/// Every component of `comps` holds some of `pts`, with all coordinate gaps
/// (including the wrap gap on circles and the end gaps on intervals) <= eps.
bool eps_dense(const DomainPtr& d, const std::vector<std::uint32_t>& comps,
               const std::vector<Point>& pts, const ExactReal& eps) {
  auto lt = [](const ExactReal& a, const ExactReal& b) { return cmp(a, b) == Ordering::LT; };
  for (std::uint32_t c : comps) {
    std::vector<ExactReal> off;
    for (const Point& p : pts)
      if (p.comp == c) off.push_back(p.offset);
    if (off.empty()) return false;
    std::sort(off.begin(), off.end(), lt);
    const Component& comp = d->component(c);
    for (std::size_t i = 0; i + 1 < off.size(); ++i)
      if (cmp(off[i + 1] - off[i], eps) == Ordering::GT) return false;
    ExactReal end_gap = comp.length - off.back();
    if (comp.kind == ComponentKind::Circle) {
      // wrap distance from the last offset around to the first
      if (cmp(end_gap + off.front(), eps) == Ordering::GT) return false;
    } else {
      if (cmp(off.front(), eps) == Ordering::GT) return false;
      if (cmp(end_gap, eps) == Ordering::GT) return false;
    }
  }
  return true;
}

/// Spot-check for an irreducible verdict: grow the orbit of the class
/// midpoint until it is (measure/100)-dense on the class or the cap is hit.
bool density_corroborated(const DomainPtr& d, const std::vector<std::uint32_t>& comps,
                          const std::vector<const Iet*>& sym, std::size_t cap) {
  ExactReal meas = d->zero();
  for (std::uint32_t c : comps) meas = meas + d->component(c).length;
  ExactReal eps = meas.scaled(Rational(1, 100));

  Point start = Point::make(d, comps.front(), d->component(comps.front()).length.scaled(Rational(1, 2)));
  std::unordered_set<Point, PointHash> seen{start};
  std::vector<Point> pts{start};
  std::vector<Point> frontier{start};
  std::size_t last_checked = 0;
  while (!frontier.empty()) {
    std::vector<Point> next;
    for (const Point& p : frontier)
      for (const Iet* t : sym) {
        Point q = t->apply(p);
        if (!seen.insert(q).second) continue;
        if (pts.size() >= cap) return eps_dense(d, comps, pts, eps);
        pts.push_back(q);
        next.push_back(q);
      }
    frontier = std::move(next);
    // Sorting with exact comparisons is the expensive part; only re-check
    // once the point set has grown appreciably.
    if (frontier.empty() || pts.size() >= last_checked + last_checked / 4 + 8) {
      last_checked = pts.size();
      if (eps_dense(d, comps, pts, eps)) return true;
    }
  }
  return false;
}

// --- exact decision for classes without discontinuities ----------------------

/// Inside a discontinuity-free class every generator acts rigidly: it permutes
/// the components and rotates circle fibers.  `to`/`inv_to` give the
/// permutation in class-local indices, `rot` the rotation offset picked up on
/// each source component (zero on intervals).
struct CompAction {
  std::vector<std::uint32_t> to, inv_to;
  std::vector<ExactReal> rot;
};

enum class DiscFreeKind { Irreducible, Finite, Capped };
struct DiscFreeOutcome {
  DiscFreeKind kind;
  std::size_t cardinality = 0;
};

DiscFreeOutcome decide_disc_free(const DomainPtr& d, const std::vector<std::uint32_t>& comps,
                                 const std::vector<std::pair<std::string, Iet>>& sym,
                                 std::size_t cap) {
  const std::size_t m = comps.size();
  std::vector<std::uint32_t> local(d->size(), UINT32_MAX);
  for (std::size_t i = 0; i < m; ++i) local[comps[i]] = static_cast<std::uint32_t>(i);

  // Extract the rigid action.  The structural facts asserted here (single
  // image component, matching kind and length, one offset) all follow from
  // the absence of interior discontinuities; violating them means the class
  // bookkeeping is broken, not the input.
  std::vector<CompAction> act(sym.size());
  for (std::size_t gi = 0; gi < sym.size(); ++gi) {
    const Iet& t = sym[gi].second;
    act[gi].to.assign(m, 0);
    act[gi].inv_to.assign(m, 0);
    act[gi].rot.assign(m, d->zero());
    for (std::size_t li = 0; li < m; ++li) {
      std::uint32_t ci = comps[li];
      std::uint32_t dst = UINT32_MAX;
      ExactReal r = d->zero();
      bool first = true;
      for (const Cell& cell : t.cells()) {
        if (cell.src_c != ci) continue;
        if (first) {
          dst = cell.dst_c;
        } else if (cell.dst_c != dst) {
          throw Error("internal: split component image in a discontinuity-free class");
        }
        const Component& src = d->component(ci);
        const Component& dc = d->component(dst);
        if (src.kind != dc.kind || !(src.length == dc.length))
          throw Error("internal: non-rigid component map in a discontinuity-free class");
        if (src.kind == ComponentKind::Circle) {
          ExactReal off = mod_interval(cell.dst_lo - cell.src_lo, src.length);
          if (first)
            r = off;
          else if (!(off == r))
            throw Error("internal: inconsistent rotation offset in a discontinuity-free class");
        } else if (!(cell.dst_lo - cell.src_lo).is_zero()) {
          throw Error("internal: shifted interval in a discontinuity-free class");
        }
        first = false;
      }
      if (dst == UINT32_MAX || local[dst] == UINT32_MAX)
        throw Error("internal: class is not generator-closed");
      act[gi].to[li] = local[dst];
      act[gi].rot[li] = r;
    }
    for (std::size_t li = 0; li < m; ++li) act[gi].inv_to[act[gi].to[li]] = static_cast<std::uint32_t>(li);
  }

  // All components of the class share one length (rigid edges + connectivity).
  std::vector<ExactReal> lens;
  lens.reserve(m);
  for (std::uint32_t c : comps) lens.push_back(d->component(c).length);

  // Image of the class in the symmetric group on its components, with a
  // transversal word per permutation (generator indices, applied in order).
  using Perm = std::vector<std::uint32_t>;
  Perm id(m);
  for (std::size_t i = 0; i < m; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::map<Perm, std::vector<std::uint32_t>> words{{id, {}}};
  std::queue<Perm> bfs;
  bfs.push(id);
  while (!bfs.empty()) {
    Perm p = bfs.front();
    bfs.pop();
    std::vector<std::uint32_t> w = words.at(p);
    for (std::size_t gi = 0; gi < sym.size(); ++gi) {
      Perm q(m);
      for (std::size_t j = 0; j < m; ++j) q[j] = act[gi].to[p[j]];
      if (words.count(q)) continue;
      if (words.size() >= cap) return {DiscFreeKind::Capped};
      auto wq = w;
      wq.push_back(static_cast<std::uint32_t>(gi));
      bfs.push(q);
      words.emplace(std::move(q), std::move(wq));
    }
  }

  // (state-walk helper for evaluating words on (component, offset) pairs)
  auto step = [&](std::uint32_t gi, std::uint32_t& j, ExactReal& s) {
    s = mod_interval(s + act[gi].rot[j], lens[j]);
    j = act[gi].to[j];
  };
  auto unstep = [&](std::uint32_t gi, std::uint32_t& j, ExactReal& s) {
    std::uint32_t j0 = act[gi].inv_to[j];
    s = mod_interval(s - act[gi].rot[j0], lens[j0]);
    j = j0;
  };

  // Kernel of the permutation action via Schreier generators: for transversal
  // word w_p and generator gi, the element w_q^{-1} gi w_p (q = pi_gi p)
  // fixes every component and rotates each circle by some exact offset.  The
  // class has finite orbits iff every such offset is a rational multiple of
  // the circle length; one irrational offset gives dense fiber orbits.
  for (const auto& [p, wp] : words) {
    for (std::size_t gi = 0; gi < sym.size(); ++gi) {
      Perm q(m);
      for (std::size_t j = 0; j < m; ++j) q[j] = act[gi].to[p[j]];
      const auto& wq = words.at(q);
      for (std::size_t lj = 0; lj < m; ++lj) {
        if (d->component(comps[lj]).kind != ComponentKind::Circle) continue;
        std::uint32_t j = static_cast<std::uint32_t>(lj);
        ExactReal s = d->zero();
        for (std::uint32_t wg : wp) step(wg, j, s);
        step(static_cast<std::uint32_t>(gi), j, s);
        for (auto it = wq.rbegin(); it != wq.rend(); ++it) unstep(*it, j, s);
        if (j != lj) throw Error("internal: Schreier element moved a component");
        if (!in_q_span(s, {lens[lj]})) return {DiscFreeKind::Irreducible};
      }
    }
  }

  // Every kernel rotation is rational: finite orbits, constant cardinality.
  // Count it on sample points (two, as a cross-check of the route above).
  std::vector<const Iet*> ptr;
  ptr.reserve(sym.size());
  for (const auto& [name, t] : sym) ptr.push_back(&t);
  std::size_t card = 0;
  for (Rational f : {Rational(1, 3), Rational(2, 7)}) {
    Point x = Point::make(d, comps.front(), lens.front().scaled(f));
    auto orb = closed_orbit(ptr, x, cap);
    if (!orb) return {DiscFreeKind::Capped};
    if (card == 0)
      card = orb->size();
    else if (card != orb->size())
      throw Error("internal: sampled orbits of a finite class disagree");
  }
  return {DiscFreeKind::Finite, card};
}

}  // namespace

Decomposition imanishi_decompose(const FinGenGroup& g, std::size_t cap) {
  DfResult df = d_f_set(g, cap);

  // Cut along the complete regular orbits (interior points; an orbit's
  // boundary leaves are already seams).
  std::vector<Point> cuts;
  std::unordered_set<Point, PointHash> seen_cut;
  for (const auto& orb : df.orbits)
    for (const Point& p : orb)
      if (!p.is_boundary() && seen_cut.insert(p).second) cuts.push_back(p);
  CutResult cr = cut_domain(g.domain(), cuts);
  const DomainPtr& d = cr.cut;

  std::vector<std::pair<std::string, Iet>> sym;
  sym.reserve(g.symmetric_generators().size());
  for (const auto& [name, t] : g.symmetric_generators())
    sym.emplace_back(name, cr.to_cut.conjugate(t));

  // Classes: components linked whenever a generator maps part of one into
  // the other.
  UnionFind uf(d->size());
  for (const auto& [name, t] : sym)
    for (const Cell& c : t.cells()) uf.unite(c.src_c, c.dst_c);
  std::map<std::uint32_t, std::vector<std::uint32_t>> classes;
  for (std::uint32_t c = 0; c < d->size(); ++c) classes[uf.find(c)].push_back(c);

  // Remaining interior discontinuities, bucketed by class.
  std::map<std::uint32_t, std::vector<Point>> class_disc;
  for (const auto& [name, t] : sym)
    for (const Point& p : t.discontinuities()) class_disc[uf.find(p.comp)].push_back(p);

  // Classes touched by a capped regular orbit cannot be decided.
  std::unordered_set<std::uint32_t> residual_roots;
  for (const Point& p : df.unresolved) residual_roots.insert(uf.find(cr.to_cut.map(p).comp));

  std::vector<const Iet*> ptr;
  ptr.reserve(sym.size());
  for (const auto& [name, t] : sym) ptr.push_back(&t);

  Decomposition out;
  for (const auto& [root, comps] : classes) {
    Subdomain on_cut = Subdomain::empty(d);
    for (std::uint32_t c : comps) on_cut = on_cut.unite(Subdomain::of_component(d, c));
    Subdomain part = cr.to_cut.pull(on_cut);

    if (residual_roots.count(root)) {
      out.residual_undecided.push_back(part);
      continue;
    }
    if (class_disc.count(root)) {
      out.irreducible.push_back({part, density_corroborated(d, comps, ptr, cap)});
      continue;
    }
    DiscFreeOutcome r = decide_disc_free(d, comps, sym, cap);
    switch (r.kind) {
      case DiscFreeKind::Irreducible:
        out.irreducible.push_back({part, density_corroborated(d, comps, ptr, cap)});
        break;
      case DiscFreeKind::Finite:
        out.finite_part.push_back({part, r.cardinality});
        break;
      case DiscFreeKind::Capped:
        out.residual_undecided.push_back(part);
        break;
    }
  }
  return out;
}

Verdict finite_orbit_triviality(const FinGenGroup& g, std::size_t cap) {
  Decomposition dec = imanishi_decompose(g, cap);
  for (const auto& f : dec.finite_part)
    if (f.cardinality != 1) return Verdict::No;
  return dec.complete() ? Verdict::Yes : Verdict::Unknown;
}

StabilityReport relative_stability(const FinGenGroup& g,
                                   const std::vector<std::pair<std::string, Iet>>& h_gens,
                                   std::size_t cap) {
  Decomposition base = imanishi_decompose(g, cap);
  StabilityReport rep;
  rep.stable = base.complete() ? Verdict::Yes : Verdict::Unknown;

  for (const auto& irr : base.irreducible) {
    StabilityReport::Entry e;
    e.component = irr.part;

    RestrictResult rr = restrict_domain(irr.part);
    std::vector<std::pair<std::string, Iet>> restricted;
    for (const auto& [name, t] : h_gens) restricted.emplace_back(name, restrict_to(t, irr.part));
    FinGenGroup h(rr.part, std::move(restricted));
    Decomposition sub = imanishi_decompose(h, cap);

    if (sub.irreducible.size() + sub.finite_part.size() > 1 || !sub.finite_part.empty())
      e.preserved = Verdict::No;
    else if (!sub.complete())
      e.preserved = Verdict::Unknown;
    else
      e.preserved = sub.irreducible.size() == 1 ? Verdict::Yes : Verdict::No;

    // report the sub-decomposition in the coordinates of the original domain
    for (auto& piece : sub.irreducible)
      e.under_h.irreducible.push_back({rr.embed.push(piece.part), piece.density_corroborated});
    for (auto& piece : sub.finite_part)
      e.under_h.finite_part.push_back({rr.embed.push(piece.part), piece.cardinality});
    for (auto& piece : sub.residual_undecided)
      e.under_h.residual_undecided.push_back(rr.embed.push(piece));

    if (e.preserved == Verdict::No)
      rep.stable = Verdict::No;
    else if (e.preserved == Verdict::Unknown && rep.stable == Verdict::Yes)
      rep.stable = Verdict::Unknown;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace ietk
