#pragma once

#include <map>

#include "ietk/domain.hpp"

namespace ietk {

// One translation cell: [src_lo, src_hi) on component src_c maps by
// x -> dst_lo + (x - src_lo) onto [dst_lo, dst_lo + len) on dst_c.
struct Cell {
  std::uint32_t src_c;
  ExactReal src_lo, src_hi;
  std::uint32_t dst_c;
  ExactReal dst_lo;
};

/// Interval exchange transformation: a left-continuous piecewise translation
/// bijection of a Domain.  The cell list is canonical (sorted by source,
/// adjacent cells merged whenever the image continues without a wrap), so
/// syntactic equality of canonical forms is semantic equality and canonical
/// hashing is sound for deduplication.
class Iet {
 public:
  static Iet identity(DomainPtr d);
  /// Canonicalizes and validates that the cells partition the domain on both
  /// the source and the image side.
  static Iet from_cells(DomainPtr d, std::vector<Cell> cells);

  const DomainPtr& domain() const { return dom_; }
  const std::vector<Cell>& cells() const { return cells_; }

  Point apply(const Point& p) const;
  Point apply_inverse(const Point& p) const;
  /// this after o:  (compose(o))(x) = this(o(x)).
  Iet compose(const Iet& o) const;
  Iet inverse() const;
  Iet power(long n) const;

  bool is_identity() const;
  bool operator==(const Iet& o) const;
  bool operator!=(const Iet& o) const { return !(*this == o); }
  std::size_t hash() const;
  std::string str() const;

  /// Intrinsic discontinuities: interior points where the left limit (taken
  /// around the circle on circle components) differs from the value.  A full
  /// rotation therefore has none, and interval left endpoints are boundary,
  /// never discontinuities.
  std::vector<Point> discontinuities() const;
  std::size_t disc_count() const { return discontinuities().size(); }

  Subdomain image_of(const Subdomain& s) const;
  Subdomain preimage_of(const Subdomain& s) const;
  bool is_invariant(const Subdomain& s) const;

 private:
  DomainPtr dom_;
  std::vector<Cell> cells_;
  std::vector<std::pair<std::size_t, std::size_t>> comp_range_;  // cell slice per src comp
};

struct IetHash {
  std::size_t operator()(const Iet& t) const { return t.hash(); }
};

// --- builders --------------------------------------------------------------

/// Rotation by `angle` on one circle component, identity elsewhere.
Iet rotation(DomainPtr d, std::size_t comp, const ExactReal& angle);
/// Rotation by `angle` on every circle component at once, identity on
/// interval components.
Iet synchronized_rotation(DomainPtr d, const ExactReal& angle);
/// Component i maps identically onto image[i]; lengths must agree.
Iet component_permutation(DomainPtr d, const std::vector<std::uint32_t>& image);
/// On the given coordinate arcs, component c maps identically onto
/// comp_map[c]; identity everywhere else.  The mapped components must pairwise
/// agree in length and the arcs must fit in them.  This realizes fiberwise
/// permutations supported on a set of base arcs.
Iet fiber_permutation(DomainPtr d, const std::map<std::uint32_t, std::uint32_t>& comp_map,
                      const std::vector<std::pair<ExactReal, ExactReal>>& arcs);

// --- complexity ------------------------------------------------------------

struct NormEstimate {
  struct Row {
    long n;
    std::size_t d;      // #discontinuities of T^n
    Rational ratio;     // d / n
  };
  std::vector<Row> rows;
};
/// d(T^n) for n = 1..n_max, with the subadditive ratios d(T^n)/n whose
/// limit exists by Fekete.
NormEstimate norm_estimate(const Iet& t, int n_max);

// --- maps between domains ---------------------------------------------------

/// Piecewise-translation bijection from a subdomain of src onto a subdomain
/// of dst (cells need not cover either domain).  Used for cutting, for
/// restricting to invariant subdomains, and for transporting transformations
/// and subdomains across such identifications.
class DomainMap {
 public:
  static DomainMap make(DomainPtr src, DomainPtr dst, std::vector<Cell> cells);

  const DomainPtr& src() const { return src_; }
  const DomainPtr& dst() const { return dst_; }
  const std::vector<Cell>& cells() const { return cells_; }

  Point map(const Point& p) const;
  Point unmap(const Point& p) const;
  Subdomain push(const Subdomain& s) const;
  Subdomain pull(const Subdomain& s) const;
  DomainMap inverted() const;
  /// phi o T o phi^{-1} as a transformation of dst().  T must preserve the
  /// source cover of this map.
  Iet conjugate(const Iet& t) const;

 private:
  DomainPtr src_, dst_;
  std::vector<Cell> cells_;
};

struct CutResult {
  DomainPtr cut;     // same space, re-seamed at the cut points
  DomainMap to_cut;  // original -> cut; discontinuous exactly at the cuts
};

/// Cut the domain at interior points.  A circle cut at k points becomes k
/// intervals (one point: one interval); an interval cut at k interior points
/// becomes k+1 intervals.  The piece whose left end sits at the first cut
/// (circles) or at 0 (intervals) keeps the component label; subsequent pieces
/// get ".1", ".2", ... appended in coordinate order.
CutResult cut_domain(DomainPtr d, const std::vector<Point>& cuts);

struct RestrictResult {
  DomainPtr part;       // the subdomain as a domain of its own
  DomainMap embed;      // part -> original
};

/// Present a subdomain as a standalone domain: full circles stay circles and
/// keep their labels; partial arcs become intervals labeled "label[i]" by
/// position.  restrict_to then transports an invariant transformation onto it.
RestrictResult restrict_domain(const Subdomain& s);
Iet restrict_to(const Iet& t, const Subdomain& s);

// --- finite extensions -------------------------------------------------------

/// Multiplication table of a finite group on elements 0..n-1.  make()
/// rejects anything that is not a group (identity, inverses, associativity,
/// Latin-square rows/columns).
struct GroupTable {
  std::vector<std::vector<std::uint32_t>> mul;
  std::uint32_t identity = 0;

  static GroupTable make(std::vector<std::vector<std::uint32_t>> mul);
  std::size_t order() const { return mul.size(); }
  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[a][b]; }
  std::uint32_t inverse(std::uint32_t a) const;
  bool is_abelian() const;

  static GroupTable cyclic(std::size_t n);
  static GroupTable symmetric3();
};

/// One-line permutations of {0,1,2} aligned with the element order of
/// GroupTable::symmetric3(); the natural action on three fibers.
std::vector<std::vector<std::uint32_t>> symmetric3_action();

struct ExtensionResult {
  DomainPtr domain;  // Q x base, components labeled "q<i>:<label>"
  // Slot copies of the base generators ("<name>@q<i>") followed by the
  // left-multiplication transformations ("q<i>").
  std::vector<std::pair<std::string, Iet>> generators;
};

/// Induced system on Q x base: each base generator acting in one slot, plus Q
/// acting by left multiplication on the slot coordinate.  The subgroup these
/// generate is the wreath-type extension of the base system by Q.
ExtensionResult induce_finite_extension(DomainPtr base,
                                        const std::vector<std::pair<std::string, Iet>>& gens,
                                        const GroupTable& q);

}  // namespace ietk
