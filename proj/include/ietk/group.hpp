#pragma once

#include "ietk/iet.hpp"

namespace ietk {

/// Finitely generated subgroup of the IET group of a fixed domain, presented
/// by named generators.  Identity generators are dropped and duplicates (in
/// canonical form) removed; the symmetric closure gets "^-1" names.
class FinGenGroup {
 public:
  FinGenGroup(DomainPtr d, std::vector<std::pair<std::string, Iet>> gens);

  const DomainPtr& domain() const { return dom_; }
  const std::vector<std::pair<std::string, Iet>>& generators() const { return gens_; }
  const std::vector<std::pair<std::string, Iet>>& symmetric_generators() const { return sym_; }

 private:
  DomainPtr dom_;
  std::vector<std::pair<std::string, Iet>> gens_;
  std::vector<std::pair<std::string, Iet>> sym_;
};

struct BallResult {
  std::vector<Iet> elements;            // breadth-first, identity first
  std::vector<std::size_t> by_radius;   // cumulative sizes |B_0|, |B_1|, ...
  bool complete = true;                 // false when max_elements truncated it
};
/// Ball of radius r in the word metric, deduplicated by canonical form.
BallResult ball(const FinGenGroup& g, int radius, std::size_t max_elements = SIZE_MAX);

struct OrbitResult {
  std::vector<Point> points;
  std::vector<std::size_t> by_radius;
  bool complete = true;
};
/// B_r . x, deduplicated by exact point equality.
OrbitResult orbit(const FinGenGroup& g, const Point& x, int radius,
                  std::size_t max_points = SIZE_MAX);

enum class ClosureStatus { Complete, Capped };

/// Orbit graph rooted at a point: vertices are reached points, edges carry
/// the generator name and whether the step was regular (generator continuous
/// there and the point interior).  When `regular_only`, the search expands
/// along regular edges only, i.e. it computes the regular orbit.
struct OrbitGraph {
  std::vector<Point> vertices;
  struct Edge {
    std::size_t from, to;
    std::string gen;
    bool regular;
  };
  std::vector<Edge> edges;
  ClosureStatus status = ClosureStatus::Complete;
};
OrbitGraph orbit_graph(const FinGenGroup& g, const Point& x, std::size_t cap,
                       bool regular_only);

/// Regular orbit Reg(x): the closure of x under generator steps that are
/// continuous at interior points.  Boundary points are their own regular
/// orbit by convention.  Capped exploration is reported, never guessed around.
std::pair<std::vector<Point>, ClosureStatus> regular_orbit(const FinGenGroup& g, const Point& x,
                                                           std::size_t cap);

struct DfResult {
  // Generator discontinuities whose regular orbit closed up: these are the
  // obstructions that cutting must (and can) remove.
  std::vector<Point> members;
  std::vector<std::vector<Point>> orbits;  // full regular orbit per member
  // Discontinuities whose regular orbit hit the cap: unknown status.
  std::vector<Point> unresolved;
};
DfResult d_f_set(const FinGenGroup& g, std::size_t cap);

/// Exact visit frequency #{0 <= k < n : T^k(x) in E} / n.
Rational birkhoff_frequency(const Iet& t, const Point& x, const Subdomain& e, long n);

}  // namespace ietk
