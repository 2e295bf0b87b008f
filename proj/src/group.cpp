#include "ietk/group.hpp"

#include <unordered_map>
#include <unordered_set>

namespace ietk {

FinGenGroup::FinGenGroup(DomainPtr d, std::vector<std::pair<std::string, Iet>> gens)
    : dom_(std::move(d)) {
  if (!dom_) throw Error("null domain");
  for (auto& [name, t] : gens) {
    if (!same_domain(t.domain(), dom_)) throw Error("generator '" + name + "' on a different domain");
    if (t.is_identity()) continue;  // contributes nothing to the group
    bool dup = false;
    for (const auto& [n2, t2] : gens_) dup = dup || t2 == t;
    if (!dup) gens_.emplace_back(name, std::move(t));
  }
  sym_ = gens_;
  for (const auto& [name, t] : gens_) {
    Iet inv = t.inverse();
    bool dup = false;
    for (const auto& [n2, t2] : sym_) dup = dup || t2 == inv;
    if (!dup) sym_.emplace_back(name + "^-1", std::move(inv));
  }
}

namespace {

struct IetEq {
  bool operator()(const Iet& a, const Iet& b) const { return a == b; }
};
struct PointEq {
  bool operator()(const Point& a, const Point& b) const { return a == b; }
};

}  // namespace

BallResult ball(const FinGenGroup& g, int radius, std::size_t max_elements) {
  BallResult r;
  std::unordered_set<Iet, IetHash, IetEq> seen;
  Iet id = Iet::identity(g.domain());
  seen.insert(id);
  r.elements.push_back(id);
  r.by_radius.push_back(1);
  std::vector<Iet> frontier{id};
  for (int rad = 1; rad <= radius && r.complete; ++rad) {
    std::vector<Iet> next;
    for (const Iet& e : frontier) {
      for (const auto& [name, s] : g.symmetric_generators()) {
        Iet w = s.compose(e);
        if (seen.insert(w).second) {
          r.elements.push_back(w);
          next.push_back(std::move(w));
          if (r.elements.size() >= max_elements) {
            r.complete = false;
            break;
          }
        }
      }
      if (!r.complete) break;
    }
    frontier = std::move(next);
    r.by_radius.push_back(r.elements.size());
    if (frontier.empty()) {  // the whole group was enumerated
      while (static_cast<int>(r.by_radius.size()) <= radius) r.by_radius.push_back(r.elements.size());
      break;
    }
  }
  return r;
}

OrbitResult orbit(const FinGenGroup& g, const Point& x, int radius, std::size_t max_points) {
  if (!same_domain(x.domain, g.domain())) throw Error("point from a different domain");
  OrbitResult r;
  std::unordered_set<Point, PointHash, PointEq> seen;
  seen.insert(x);
  r.points.push_back(x);
  r.by_radius.push_back(1);
  std::vector<Point> frontier{x};
  for (int rad = 1; rad <= radius && r.complete; ++rad) {
    std::vector<Point> next;
    for (const Point& p : frontier) {
      for (const auto& [name, s] : g.symmetric_generators()) {
        Point q = s.apply(p);
        if (seen.insert(q).second) {
          r.points.push_back(q);
          next.push_back(std::move(q));
          if (r.points.size() >= max_points) {
            r.complete = false;
            break;
          }
        }
      }
      if (!r.complete) break;
    }
    frontier = std::move(next);
    r.by_radius.push_back(r.points.size());
    if (frontier.empty()) {
      while (static_cast<int>(r.by_radius.size()) <= radius) r.by_radius.push_back(r.points.size());
      break;
    }
  }
  return r;
}

OrbitGraph orbit_graph(const FinGenGroup& g, const Point& x, std::size_t cap, bool regular_only) {
  if (!same_domain(x.domain, g.domain())) throw Error("point from a different domain");
  OrbitGraph graph;
  // Discontinuity sets, precomputed per symmetric generator.
  std::vector<std::vector<Point>> disc;
  for (const auto& [name, s] : g.symmetric_generators()) disc.push_back(s.discontinuities());
  auto is_disc = [&disc](std::size_t gi, const Point& p) {
    for (const Point& d : disc[gi])
      if (d == p) return true;
    return false;
  };

  std::unordered_map<Point, std::size_t, PointHash, PointEq> index;
  auto vertex = [&](const Point& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    std::size_t i = graph.vertices.size();
    graph.vertices.push_back(p);
    index.emplace(p, i);
    return i;
  };
  vertex(x);
  // A boundary seed is its own regular orbit; it still gets its non-regular
  // edges recorded when the caller asked for the full graph.
  std::size_t head = 0;
  while (head < graph.vertices.size()) {
    Point p = graph.vertices[head];
    bool expandable = !p.is_boundary();
    for (std::size_t gi = 0; gi < g.symmetric_generators().size(); ++gi) {
      const auto& [name, s] = g.symmetric_generators()[gi];
      Point q = s.apply(p);
      bool regular = expandable && !is_disc(gi, p);
      if (!regular && regular_only) continue;
      if (graph.vertices.size() >= cap && index.find(q) == index.end()) {
        graph.status = ClosureStatus::Capped;
        continue;
      }
      std::size_t to = vertex(q);
      graph.edges.push_back(OrbitGraph::Edge{head, to, name, regular});
    }
    ++head;
  }
  return graph;
}

std::pair<std::vector<Point>, ClosureStatus> regular_orbit(const FinGenGroup& g, const Point& x,
                                                           std::size_t cap) {
  OrbitGraph graph = orbit_graph(g, x, cap, true);
  return {std::move(graph.vertices), graph.status};
}

DfResult d_f_set(const FinGenGroup& g, std::size_t cap) {
  DfResult r;
  std::unordered_set<Point, PointHash, PointEq> seen;
  for (const auto& [name, s] : g.symmetric_generators()) {
    for (const Point& p : s.discontinuities()) {
      if (!seen.insert(p).second) continue;
      auto [pts, status] = regular_orbit(g, p, cap);
      if (status == ClosureStatus::Complete) {
        r.members.push_back(p);
        r.orbits.push_back(std::move(pts));
      } else {
        r.unresolved.push_back(p);
      }
    }
  }
  return r;
}

Rational birkhoff_frequency(const Iet& t, const Point& x, const Subdomain& e, long n) {
  if (n <= 0) throw Error("birkhoff_frequency needs n > 0");
  long hits = 0;
  Point p = x;
  for (long k = 0; k < n; ++k) {
    if (e.contains(p)) ++hits;
    p = t.apply(p);
  }
  Rational f(hits, n);
  f.canonicalize();
  return f;
}

}  // namespace ietk
