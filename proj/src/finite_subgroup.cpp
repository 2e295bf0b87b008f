#include "ietk/finite_subgroup.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace ietk {

namespace {

/// Index of t in elems, matching by canonical form via the hash buckets.
std::optional<std::size_t> index_of(const std::vector<Iet>& elems,
                                    const std::unordered_map<std::size_t, std::vector<std::size_t>>& buckets,
                                    const Iet& t) {
  auto it = buckets.find(t.hash());
  if (it == buckets.end()) return std::nullopt;
  for (std::size_t i : it->second)
    if (elems[i] == t) return i;
  return std::nullopt;
}

}  // namespace

FiniteSubgroup FiniteSubgroup::from_elements(std::vector<Iet> elements) {
  if (elements.empty()) throw Error("a finite subgroup needs at least its identity element");
  DomainPtr dom = elements.front().domain();
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!same_domain(elements[i].domain(), dom))
      throw Error("subgroup elements live on different domains");
    if (index_of(elements, buckets, elements[i]))
      throw Error("duplicate element in subgroup list");
    buckets[elements[i].hash()].push_back(i);
  }

  const std::size_t n = elements.size();
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    auto inv = index_of(elements, buckets, elements[i].inverse());
    if (!inv) throw Error("element list is not closed under inverse");
    for (std::size_t j = 0; j < n; ++j) {
      auto k = index_of(elements, buckets, elements[i].compose(elements[j]));
      if (!k) throw Error("element list is not closed under composition");
      mul[i][j] = static_cast<std::uint32_t>(*k);
    }
  }
  return FiniteSubgroup(std::move(dom), std::move(elements), GroupTable::make(std::move(mul)));
}

FiniteSubgroup FiniteSubgroup::generate(DomainPtr d, const std::vector<Iet>& gens,
                                        std::size_t cap) {
  std::vector<Iet> elems{Iet::identity(d)};
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  buckets[elems[0].hash()].push_back(0);
  std::queue<std::size_t> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    std::size_t i = bfs.front();
    bfs.pop();
    for (const Iet& g : gens) {
      Iet next = g.compose(elems[i]);
      if (index_of(elems, buckets, next)) continue;
      if (elems.size() >= cap)
        throw Error("subgroup closure exceeded " + std::to_string(cap) + " elements");
      buckets[next.hash()].push_back(elems.size());
      elems.push_back(std::move(next));
      bfs.push(elems.size() - 1);
    }
  }
  return from_elements(std::move(elems));
}

std::vector<std::uint32_t> FiniteSubgroup::stabilizer(const Point& x) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (elems_[i].apply(x) == x) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

bool FiniteSubgroup::is_normal(const std::vector<std::uint32_t>& sub) const {
  std::unordered_set<std::uint32_t> in(sub.begin(), sub.end());
  for (std::uint32_t g = 0; g < tab_.order(); ++g) {
    std::uint32_t gi = tab_.inverse(g);
    for (std::uint32_t s : sub)
      if (!in.count(tab_.times(tab_.times(g, s), gi))) return false;
  }
  return true;
}

bool FiniteSubgroup::quotient_abelian(const std::vector<std::uint32_t>& sub) const {
  std::unordered_set<std::uint32_t> in(sub.begin(), sub.end());
  for (std::uint32_t a = 0; a < tab_.order(); ++a)
    for (std::uint32_t b = 0; b < tab_.order(); ++b) {
      // commutator a b a^-1 b^-1 must land in the subgroup
      std::uint32_t c = tab_.times(tab_.times(a, b), tab_.times(tab_.inverse(a), tab_.inverse(b)));
      if (!in.count(c)) return false;
    }
  return true;
}

std::vector<StabPiece> stab_partition(const FiniteSubgroup& f) {
  const DomainPtr& dom = f.domain();
  std::vector<Point> cuts;
  std::unordered_set<Point, PointHash> seen;
  for (const Iet& t : f.elements())
    for (const Point& p : t.discontinuities())
      if (seen.insert(p).second) cuts.push_back(p);
  CutResult cr = cut_domain(dom, cuts);

  std::vector<StabPiece> out;
  for (std::size_t c = 0; c < cr.cut->size(); ++c) {
    const ExactReal& len = cr.cut->component(c).length;
    // Stabilizers are constant on each piece by construction; verify at the
    // left end, the midpoint, and further along anyway.
    std::vector<std::uint32_t> stab;
    bool first = true;
    for (Rational r : {Rational(0), Rational(1, 2), Rational(9, 10)}) {
      Point sample = cr.to_cut.unmap(Point::make(cr.cut, c, len.scaled(r)));
      auto s = f.stabilizer(sample);
      if (first)
        stab = std::move(s);
      else if (s != stab)
        throw Error("internal: stabilizer not constant on a partition piece");
      first = false;
    }
    out.push_back({cr.to_cut.pull(Subdomain::of_component(cr.cut, c)), std::move(stab)});
  }
  return out;
}

Subdomain nonnormal_locus(const FiniteSubgroup& f) {
  Subdomain out = Subdomain::empty(f.domain());
  for (const StabPiece& p : stab_partition(f))
    if (!f.is_normal(p.stabilizer)) out = out.unite(p.piece);
  return out;
}

Subdomain nonabelian_quotient_locus(const FiniteSubgroup& f) {
  Subdomain out = Subdomain::empty(f.domain());
  for (const StabPiece& p : stab_partition(f))
    if (!f.is_normal(p.stabilizer) || !f.quotient_abelian(p.stabilizer))
      out = out.unite(p.piece);
  return out;
}

ProductOrbitBound product_orbit_bound(const std::vector<FiniteSubgroup>& factors, const Point& x) {
  if (factors.empty()) throw Error("product_orbit_bound needs at least one factor");
  const DomainPtr& dom = factors.front().domain();
  for (const FiniteSubgroup& f : factors)
    if (!same_domain(f.domain(), dom)) throw Error("factors live on different domains");

  // element-wise commutation across distinct factors
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      for (const Iet& a : factors[i].elements())
        for (const Iet& b : factors[j].elements())
          if (a.compose(b) != b.compose(a))
            throw Error("factors " + std::to_string(i) + " and " + std::to_string(j) +
                        " do not commute");

  ProductOrbitBound out;
  for (const FiniteSubgroup& f : factors) {
    auto stab = f.stabilizer(x);
    bool trig = !f.is_normal(stab) || !f.quotient_abelian(stab);
    out.triggered.push_back(trig);
    if (trig) out.lower_bound *= 2;
  }

  // exact orbit under the product group = closure under all factor elements
  std::unordered_set<Point, PointHash> orbit{x};
  std::queue<Point> bfs;
  bfs.push(x);
  while (!bfs.empty()) {
    Point p = bfs.front();
    bfs.pop();
    for (const FiniteSubgroup& f : factors)
      for (const Iet& t : f.elements()) {
        Point q = t.apply(p);
        if (orbit.insert(q).second) bfs.push(q);
      }
  }
  out.orbit_size = orbit.size();
  if (out.orbit_size < out.lower_bound)
    throw Error("internal: measured orbit beats the guaranteed lower bound");
  return out;
}

}  // namespace ietk
