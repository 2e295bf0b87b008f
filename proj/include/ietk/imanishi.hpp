#pragma once

#include "ietk/group.hpp"

namespace ietk {

enum class Verdict { Yes, No, Unknown };

/// Partition of the domain into group-invariant pieces: irreducible classes
/// (every orbit dense in the piece), finite-orbit classes (all orbits of one
/// cardinality), and pieces left undecided because a regular-orbit
/// exploration hit the cap.  Pieces are reported in the original coordinates.
struct Decomposition {
  struct Irreducible {
    Subdomain part;
    // Diagnostic only: the class midpoint's orbit became (len/100)-dense
    // within the cap.  The irreducibility verdict itself is exact.
    bool density_corroborated = false;
  };
  struct Finite {
    Subdomain part;
    std::size_t cardinality = 0;
  };
  std::vector<Irreducible> irreducible;
  std::vector<Finite> finite_part;
  std::vector<Subdomain> residual_undecided;

  bool complete() const { return residual_undecided.empty(); }
};

/// Decompose the action of G:
///   1. resolve the regular orbits of all generator discontinuities and cut
///      the domain along the complete ones, making the conjugated system free
///      of closed obstructions;
///   2. group the cut components into classes via the generator cells;
///   3. classes containing a generator discontinuity are irreducible; classes
///      without any are decided exactly through their component action: every
///      generator restricts to a component permutation with per-circle
///      rotation offsets, and the class is finite precisely when the kernel
///      of the permutation action only rotates by rational multiples of the
///      circle lengths (checked by exact span membership on Schreier
///      generators of the kernel);
///   4. map everything back through the cutting conjugacy.
/// Capped explorations mark the affected classes residual_undecided.
Decomposition imanishi_decompose(const FinGenGroup& g, std::size_t cap = 10000);

/// Yes iff every finite-orbit class is a singleton class (cardinality 1);
/// Unknown when residual pieces block the verdict.
Verdict finite_orbit_triviality(const FinGenGroup& g, std::size_t cap = 10000);

/// For each irreducible component of g, decompose the restriction of the
/// subgroup generated by h_gens (assumed inside g, hence preserving the
/// component) and report whether the component survives in one irreducible
/// piece.  Sub-results are mapped back to the original coordinates.
struct StabilityReport {
  struct Entry {
    Subdomain component;
    Verdict preserved;
    Decomposition under_h;
  };
  std::vector<Entry> entries;
  Verdict stable = Verdict::Yes;  // Yes only when every entry is preserved
};
StabilityReport relative_stability(const FinGenGroup& g,
                                   const std::vector<std::pair<std::string, Iet>>& h_gens,
                                   std::size_t cap = 10000);

}  // namespace ietk
