#pragma once

#include "ietk/iet.hpp"

namespace ietk {

/// Explicit finite subgroup of the IET group of one domain: the complete
/// element list together with its multiplication table.  Construction
/// verifies the list is actually a subgroup (distinct elements, closed under
/// composition and inverse); everything downstream may then work on the
/// table.
class FiniteSubgroup {
 public:
  static FiniteSubgroup from_elements(std::vector<Iet> elements);
  /// Closure of a generating set (the identity is always included).  Errors
  /// out loudly when the closure exceeds `cap` elements.
  static FiniteSubgroup generate(DomainPtr d, const std::vector<Iet>& gens,
                                 std::size_t cap = 10000);

  const DomainPtr& domain() const { return dom_; }
  const std::vector<Iet>& elements() const { return elems_; }
  std::size_t order() const { return elems_.size(); }
  std::uint32_t identity() const { return tab_.identity; }
  const GroupTable& table() const { return tab_; }

  /// Indices (sorted) of the elements fixing x; always a subgroup.
  std::vector<std::uint32_t> stabilizer(const Point& x) const;
  /// `sub` must be a subgroup given by sorted indices, as stabilizer() returns.
  bool is_normal(const std::vector<std::uint32_t>& sub) const;
  /// Whether the quotient by `sub` is abelian, i.e. all commutators lie in
  /// `sub`; meaningful when `sub` is normal.
  bool quotient_abelian(const std::vector<std::uint32_t>& sub) const;

 private:
  FiniteSubgroup(DomainPtr d, std::vector<Iet> e, GroupTable t)
      : dom_(std::move(d)), elems_(std::move(e)), tab_(std::move(t)) {}
  DomainPtr dom_;
  std::vector<Iet> elems_;
  GroupTable tab_;
};

/// The domain cut at every discontinuity of every element: on each resulting
/// piece the point stabilizer is constant.  Pieces come in domain order with
/// their stabilizers; constancy is re-verified at three points per piece.
struct StabPiece {
  Subdomain piece;
  std::vector<std::uint32_t> stabilizer;
};
std::vector<StabPiece> stab_partition(const FiniteSubgroup& f);

/// Union of the stab_partition pieces whose stabilizer is not normal in F.
Subdomain nonnormal_locus(const FiniteSubgroup& f);

/// Union of the pieces where F/Stab(x) fails to be abelian.  Pieces with
/// non-normal stabilizer (no quotient group at all) are included.
Subdomain nonabelian_quotient_locus(const FiniteSubgroup& f);

/// Exact orbit of x under the group generated by pairwise-commuting finite
/// subgroups, with the guaranteed lower bound 2^t where t counts the factors
/// whose hypothesis triggers at x (non-normal stabilizer, or normal with
/// non-abelian quotient).  Commutation is verified element-wise; the bound is
/// asserted against the measured orbit.
struct ProductOrbitBound {
  std::size_t orbit_size = 0;
  std::size_t lower_bound = 1;
  std::vector<bool> triggered;  // per factor
};
ProductOrbitBound product_orbit_bound(const std::vector<FiniteSubgroup>& factors, const Point& x);

}  // namespace ietk
