#pragma once

#include <map>
#include <optional>

#include "ietk/group.hpp"

namespace ietk {

// --- wreath products of a finite abelian group by Z^k ------------------------

/// Recipe for realizing A wr Z^k on |A| copies of the circle: A as a product
/// of cyclic factors, one synchronized rotation angle per Z factor, and the
/// support arc(s) of the position-0 lamp move on the base circle.
struct LampSpec {
  std::vector<unsigned> factor_orders;  // cyclic factors of A, each >= 2
  std::vector<ExactReal> angles;        // one rotation per Z factor
  // lamp support J on the base circle; empty means the default [0, 1/2)
  std::vector<std::pair<ExactReal, ExactReal>> support;
  // The construction is faithful only for angles independent of 1 over Q;
  // rational angles are refused unless this is set (control experiments).
  bool allow_dependent_angles = false;
  BasisPtr basis;
};

/// Element of A wr Z^k in normal form: a finitely supported lamp
/// configuration (positions in Z^k, values A-element digits per factor,
/// never all zero) together with the shift.
struct WreathNormalForm {
  std::map<std::vector<long>, std::vector<unsigned>> lamp;
  std::vector<long> shift;

  bool trivial() const;
};

/// The realized group: one circle per A-element (labels "<a>:c"), generators
/// are the position-0 lamp moves of the factor generators ("s" resp. "s<i>")
/// and the synchronized rotations ("R" resp. "R<j>").  evaluate() realizes a
/// normal form as the product of translated lamp moves and rotations and is a
/// homomorphism by construction.
class Lamplighter {
 public:
  explicit Lamplighter(LampSpec spec);

  const LampSpec& spec() const { return spec_; }
  const DomainPtr& domain() const { return dom_; }
  const FinGenGroup& group() const { return group_; }
  std::size_t order_a() const { return a_order_; }

  /// Digits of A-element index a, and back; addition is per-factor modular.
  std::vector<unsigned> a_digits(std::size_t a) const;
  std::size_t a_index(const std::vector<unsigned>& digits) const;

  /// The lamp move by A-element `a` at lamp position `pos` (support
  /// J + <pos, angles>).
  Iet sigma(const std::vector<unsigned>& a, const std::vector<long>& pos) const;
  /// Synchronized rotation by <n, angles>.
  Iet rotation_power(const std::vector<long>& n) const;

  Iet evaluate(const WreathNormalForm& nf) const;

 private:
  LampSpec spec_;
  std::size_t a_order_;
  DomainPtr dom_;
  FinGenGroup group_;
};

/// Walk the ball of radius `depth` of the abstract wreath product and check,
/// word by word, that the realized transformation is the identity exactly
/// when the abstract normal form is trivial.  When the ball would exceed
/// `max_forms`, the remainder is covered by seeded random words instead
/// (exhaustive = false).  A failing word is returned as the witness.
struct WreathCheckReport {
  bool ok = true;
  bool exhaustive = true;
  std::size_t forms_checked = 0;
  std::optional<std::vector<std::string>> witness;  // generator names, applied left to right
};
WreathCheckReport verify_wreath_embedding(const LampSpec& spec, int depth,
                                          std::size_t max_forms = 200000);

// --- lamplighter-like extensions over an arbitrary base group ----------------

/// F_J semidirect G: A-valued step functions generated by the G-translates of
/// A 1_J, acted on by G.  Realized on A x (domain of G): diagonal lifts of
/// G's generators (same names) plus the fiber shifts sigma_b over J
/// ("s<b>" for each nonzero b in A).
struct LlLike {
  DomainPtr base;
  DomainPtr domain;  // components "<a>:<base label>", a-major
  FinGenGroup group;
};
LlLike build_ll_like(const FinGenGroup& g, const std::vector<unsigned>& a_orders,
                     const Subdomain& j);

// --- the H_J family -----------------------------------------------------------

/// H_J = <sigma, R, tau_J> on Z/2 x Z/3 x circle: the Z/3 wr Z lamplighter
/// (lamp support I = [0,1/2), rotation alpha) extended by Z/2-valued
/// functions supported on J, a subdomain of the lamp-0 circle of the base.
struct HjBuild {
  DomainPtr base;    // Z/3 x circle, components "0:c", "1:c", "2:c"
  DomainPtr domain;  // Z/2 x base, components "<t>:<s>:c"
  FinGenGroup group;
  ExactReal alpha;
  Subdomain i0;  // sigma's support [0,1/2) as a subdomain of base component 0
  Subdomain j0;  // tau's support on base component 0
  Iet sigma, rot, tau;
};
/// `j_arcs` are read on the base domain and must all lie on component 0
/// (the circle carrying the lamp support).
HjBuild build_hj(const std::vector<Arc>& j_arcs, const ExactReal& alpha);

/// tau_K: the Z/2 fiber flip over an arbitrary subdomain K of the base.
Iet hj_tau_for(const HjBuild& hj, const Subdomain& k);

/// Unique decomposition h = R^n S_f tau: the rotation power, the Z/3 lamp
/// configuration indexed by translate positions (I + i alpha), and the Z/2
/// part as its support in the base domain.
struct HjElement {
  long n = 0;
  std::map<long, unsigned> f;  // position -> nonzero Z/3 value
  Subdomain tau;               // subset of the base domain
  Iet realized;
};
Iet hj_evaluate(const HjBuild& hj, long n, const std::map<long, unsigned>& f,
                const Subdomain& tau);
/// Inverse of hj_evaluate on genuine H_J elements; anything that fails to
/// decompose exactly is rejected loudly (membership is not decided here).
HjElement hj_normal_form(const HjBuild& hj, const Iet& h);

/// {0 <= n < n_count : [sigma, R^n tau R^-n] != id}, computed twice: by exact
/// canonical commutators and by the arithmetic predicate "n alpha lies in the
/// open difference set of the supports".  The two routes are asserted to
/// agree at every n.
struct CommutationSet {
  std::vector<long> set;
  Rational frequency;  // |set| / n_count
};
CommutationSet commutation_set(const HjBuild& hj, long n_count);

/// Exact measure of {j - i mod L : j in J, i in I}; both subdomains must sit
/// on one common circle component.
ExactReal difference_set_measure(const Subdomain& j, const Subdomain& i);

/// Necessary-condition evidence for H_J1 vs H_J2 non-isomorphism: the exact
/// commutation frequencies |J_i - I| (= 1/2 + |J_i| for single short arcs)
/// and the rational-span test of |J1| against {1, alpha, J2's endpoints}.  A
/// NONE span is consistent with the groups being non-isomorphic; nothing
/// here ever claims isomorphism.
struct DistinguishReport {
  ExactReal invariant1, invariant2;  // |J_i - I|
  bool invariants_differ = false;
  std::optional<std::vector<Rational>> span;  // |J1| over {1, alpha, a2, b2}
  bool consistent_with_distinct = false;      // span is NONE
};
DistinguishReport distinguish_invariant(const std::pair<ExactReal, ExactReal>& j1,
                                        const std::pair<ExactReal, ExactReal>& j2,
                                        const ExactReal& alpha);

/// Naive F wr Z realization for finite non-abelian F (fiber action over the
/// arc I, synchronized rotation) and a search for a failed wreath relation:
/// n <= depth and g, h in F with R^n(I) meeting I and [R^n g R^-n, h] != id.
/// Finding one certifies the construction is a proper quotient of F wr Z.
struct ObstructionReport {
  bool found = false;
  long n = 0;
  std::size_t g = 0, h = 0;                     // witness element indices in F
  std::vector<std::pair<long, bool>> overlaps;  // n -> R^n(I) meets I?
};
ObstructionReport wreath_obstruction_witness(const GroupTable& f_table,
                                             const std::vector<std::vector<std::uint32_t>>& action,
                                             const ExactReal& angle,
                                             const std::pair<ExactReal, ExactReal>& i_arc,
                                             long depth);

}  // namespace ietk
