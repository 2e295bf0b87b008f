#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ietk/exact.hpp"

namespace ietk {

enum class ComponentKind { Circle, Interval };

// One oriented piece of the phase space: a circle R/(len Z) or a half-open
// interval [0, len).  Coordinates on both live in [0, len).
struct Component {
  std::string label;
  ComponentKind kind;
  ExactReal length;
};

class Domain;
using DomainPtr = std::shared_ptr<const Domain>;

/// Finite disjoint union of components.  Immutable; shared by value objects
/// defined over it.  Component order is part of the identity (labels are the
/// stable names used in serialization).
class Domain {
 public:
  static DomainPtr make(std::vector<Component> comps, BasisPtr basis);

  std::size_t size() const { return comps_.size(); }
  const Component& component(std::size_t i) const { return comps_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  std::size_t require_index(const std::string& label) const;
  const BasisPtr& basis() const { return basis_; }
  ExactReal total_length() const;
  ExactReal zero() const { return ExactReal::rational(0, basis_); }

  bool operator==(const Domain& o) const;

 private:
  Domain() = default;
  std::vector<Component> comps_;
  BasisPtr basis_;
};

/// True when a and b denote the same domain (pointer fast path, else
/// structural comparison including labels).
bool same_domain(const DomainPtr& a, const DomainPtr& b);

struct Point {
  DomainPtr domain;
  std::uint32_t comp = 0;
  ExactReal offset;

  /// Validates 0 <= offset < length(comp).
  static Point make(DomainPtr d, std::size_t comp, ExactReal offset);
  static Point make(DomainPtr d, const std::string& label, ExactReal offset);

  bool operator==(const Point& o) const;
  bool operator!=(const Point& o) const { return !(*this == o); }
  std::size_t hash() const;
  /// Interval left endpoints form the domain boundary; everything else
  /// (including all circle points) is interior.
  bool is_boundary() const;
  std::string str() const;
};

struct PointHash {
  std::size_t operator()(const Point& p) const { return p.hash(); }
};

// Half-open arc [start, end) in the coordinates of one component; canonical
// form has 0 <= start < end <= length.
struct Arc {
  std::uint32_t comp;
  ExactReal start, end;
};

/// Finite union of half-open arcs, kept canonical (sorted, disjoint, merged,
/// empty arcs dropped).  Set algebra is exact; all measure-zero distinctions
/// are honored literally (arcs are half-open).
class Subdomain {
 public:
  Subdomain() = default;
  static Subdomain empty(DomainPtr d);
  static Subdomain whole(DomainPtr d);
  static Subdomain of_component(DomainPtr d, std::size_t comp);
  /// Accepts wrap notation on circles (end <= start or end > length means the
  /// arc passes through 0) and normalizes.
  static Subdomain make(DomainPtr d, std::vector<Arc> arcs);

  const DomainPtr& domain() const { return dom_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  bool is_empty() const { return arcs_.empty(); }
  ExactReal measure() const;
  bool contains(const Point& p) const;
  bool intersects(const Subdomain& o) const;

  Subdomain unite(const Subdomain& o) const;
  Subdomain intersect(const Subdomain& o) const;
  Subdomain complement() const;
  Subdomain setminus(const Subdomain& o) const;
  Subdomain sym_diff(const Subdomain& o) const;
  /// Rotate every arc by t within its component (all components must be
  /// circles); t is reduced mod each circle length.
  Subdomain translated(const ExactReal& t) const;

  bool operator==(const Subdomain& o) const;
  bool operator!=(const Subdomain& o) const { return !(*this == o); }
  std::size_t hash() const;
  std::string str() const;

 private:
  DomainPtr dom_;
  std::vector<Arc> arcs_;
};

}  // namespace ietk
