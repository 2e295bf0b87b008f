#include "ietk/iet.hpp"

#include <algorithm>
#include <sstream>

namespace ietk {

namespace {

// Strict source order; cells are disjoint so (comp, src_lo) is a total order.
bool cell_src_less(const Cell& a, const Cell& b) {
  if (a.src_c != b.src_c) return a.src_c < b.src_c;
  return cmp(a.src_lo, b.src_lo) == Ordering::LT;
}

bool cell_dst_less(const Cell& a, const Cell& b) {
  if (a.dst_c != b.dst_c) return a.dst_c < b.dst_c;
  return cmp(a.dst_lo, b.dst_lo) == Ordering::LT;
}

ExactReal cell_len(const Cell& c) { return c.src_hi - c.src_lo; }

// Composition of piecewise-translation cell lists: outer after inner.
// Both lists must be sorted in source order.  Pieces of the inner image not
// covered by the outer source are dropped, which makes this usable for
// partial maps; full-map users re-validate through Iet::from_cells.
std::vector<Cell> compose_cell_lists(const std::vector<Cell>& outer,
                                     const std::vector<Cell>& inner) {
  std::vector<Cell> out;
  out.reserve(outer.size() + inner.size());
  for (const Cell& ic : inner) {
    ExactReal cur = ic.dst_lo;
    ExactReal end = ic.dst_lo + cell_len(ic);
    // First outer cell on the component that could reach cur.
    auto it = std::partition_point(outer.begin(), outer.end(), [&](const Cell& oc) {
      if (oc.src_c != ic.dst_c) return oc.src_c < ic.dst_c;
      return cmp(oc.src_hi, cur) != Ordering::GT;
    });
    for (; it != outer.end() && it->src_c == ic.dst_c; ++it) {
      if (cmp(it->src_lo, end) != Ordering::LT) break;
      const ExactReal& lo = cmp(it->src_lo, cur) == Ordering::GT ? it->src_lo : cur;
      const ExactReal& hi = cmp(it->src_hi, end) == Ordering::LT ? it->src_hi : end;
      if (cmp(lo, hi) != Ordering::LT) continue;
      out.push_back(Cell{ic.src_c, ic.src_lo + (lo - ic.dst_lo), ic.src_lo + (hi - ic.dst_lo),
                         it->dst_c, it->dst_lo + (lo - it->src_lo)});
    }
  }
  std::sort(out.begin(), out.end(), cell_src_less);
  return out;
}

std::vector<Cell> invert_cells(const std::vector<Cell>& cells) {
  std::vector<Cell> inv;
  inv.reserve(cells.size());
  for (const Cell& c : cells)
    inv.push_back(Cell{c.dst_c, c.dst_lo, c.dst_lo + cell_len(c), c.src_c, c.src_lo});
  std::sort(inv.begin(), inv.end(), cell_src_less);
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// Iet

Iet Iet::identity(DomainPtr d) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < d->size(); ++i)
    cells.push_back(Cell{static_cast<std::uint32_t>(i), d->zero(), d->component(i).length,
                         static_cast<std::uint32_t>(i), d->zero()});
  return from_cells(std::move(d), std::move(cells));
}

Iet Iet::from_cells(DomainPtr d, std::vector<Cell> cells) {
  if (!d) throw Error("null domain");
  std::vector<Cell> kept;
  kept.reserve(cells.size());
  for (auto& c : cells) {
    if (c.src_c >= d->size() || c.dst_c >= d->size()) throw Error("cell component out of range");
    Ordering o = cmp(c.src_lo, c.src_hi);
    if (o == Ordering::EQ) continue;
    if (o == Ordering::GT) throw Error("cell with reversed source bounds");
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(), cell_src_less);

  // Source side must tile the domain exactly.
  std::size_t at = 0;
  for (std::size_t comp = 0; comp < d->size(); ++comp) {
    const Component& c = d->component(comp);
    ExactReal cursor = d->zero();
    if (at >= kept.size() || kept[at].src_c != comp)
      throw Error("cells do not cover component '" + c.label + "'");
    for (; at < kept.size() && kept[at].src_c == comp; ++at) {
      if (!(kept[at].src_lo == cursor))
        throw Error("cells leave a gap or overlap at " + kept[at].src_lo.str() +
                    " on component '" + c.label + "'");
      cursor = kept[at].src_hi;
    }
    if (!(cursor == c.length))
      throw Error("cells stop at " + cursor.str() + " short of the end of component '" +
                  c.label + "'");
  }
  // Image side: same tiling property, plus range checks.
  for (const Cell& c : kept) {
    if (sign(c.dst_lo) < 0) throw Error("cell image starts below 0");
    if (cmp(c.dst_lo + cell_len(c), d->component(c.dst_c).length) == Ordering::GT)
      throw Error("cell image exceeds component '" + d->component(c.dst_c).label + "'");
  }
  {
    std::vector<const Cell*> by_dst;
    by_dst.reserve(kept.size());
    for (const Cell& c : kept) by_dst.push_back(&c);
    std::sort(by_dst.begin(), by_dst.end(),
              [](const Cell* a, const Cell* b) { return cell_dst_less(*a, *b); });
    std::size_t i = 0;
    for (std::size_t comp = 0; comp < d->size(); ++comp) {
      const Component& c = d->component(comp);
      ExactReal cursor = d->zero();
      if (i >= by_dst.size() || by_dst[i]->dst_c != comp)
        throw Error("cell images do not cover component '" + c.label + "'");
      for (; i < by_dst.size() && by_dst[i]->dst_c == comp; ++i) {
        if (!(by_dst[i]->dst_lo == cursor))
          throw Error("cell images leave a gap or overlap at " + by_dst[i]->dst_lo.str() +
                      " on component '" + c.label + "'");
        cursor = by_dst[i]->dst_lo + cell_len(*by_dst[i]);
      }
      if (!(cursor == c.length))
        throw Error("cell images stop short of the end of component '" + c.label + "'");
    }
  }
  // Canonical merge: only when the image continues on the same component
  // without wrapping.
  std::vector<Cell> merged;
  for (auto& c : kept) {
    if (!merged.empty()) {
      Cell& p = merged.back();
      if (p.src_c == c.src_c && p.src_hi == c.src_lo && p.dst_c == c.dst_c &&
          p.dst_lo + cell_len(p) == c.dst_lo) {
        p.src_hi = std::move(c.src_hi);
        continue;
      }
    }
    merged.push_back(std::move(c));
  }

  Iet t;
  t.dom_ = std::move(d);
  t.cells_ = std::move(merged);
  t.comp_range_.assign(t.dom_->size(), {0, 0});
  for (std::size_t i = 0; i < t.cells_.size(); ++i) {
    auto& r = t.comp_range_[t.cells_[i].src_c];
    if (r.second == 0) r.first = i;
    r.second = i + 1;
  }
  return t;
}

Point Iet::apply(const Point& p) const {
  if (!same_domain(p.domain, dom_)) throw Error("point from a different domain");
  auto [b, e] = comp_range_[p.comp];
  auto it = std::partition_point(cells_.begin() + b, cells_.begin() + e, [&](const Cell& c) {
    return cmp(c.src_lo, p.offset) != Ordering::GT;
  });
  const Cell& c = *(it - 1);  // partition tiles the component, so it > begin
  return Point{dom_, c.dst_c, c.dst_lo + (p.offset - c.src_lo)};
}

Point Iet::apply_inverse(const Point& p) const {
  if (!same_domain(p.domain, dom_)) throw Error("point from a different domain");
  for (const Cell& c : cells_) {
    if (c.dst_c != p.comp) continue;
    if (cmp(c.dst_lo, p.offset) != Ordering::GT &&
        cmp(p.offset, c.dst_lo + cell_len(c)) == Ordering::LT)
      return Point{dom_, c.src_c, c.src_lo + (p.offset - c.dst_lo)};
  }
  throw Error("apply_inverse: point not covered (corrupt transformation)");
}

Iet Iet::compose(const Iet& o) const {
  if (!same_domain(dom_, o.dom_)) throw Error("composing transformations of different domains");
  return from_cells(dom_, compose_cell_lists(cells_, o.cells_));
}

Iet Iet::inverse() const { return from_cells(dom_, invert_cells(cells_)); }

Iet Iet::power(long n) const {
  Iet r = identity(dom_);
  Iet base = n < 0 ? inverse() : *this;
  for (long i = 0, k = n < 0 ? -n : n; i < k; ++i) r = base.compose(r);
  return r;
}

bool Iet::is_identity() const {
  for (const Cell& c : cells_)
    if (c.src_c != c.dst_c || !(c.src_lo == c.dst_lo)) return false;
  return true;
}

bool Iet::operator==(const Iet& o) const {
  if (!same_domain(dom_, o.dom_) || cells_.size() != o.cells_.size()) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell &a = cells_[i], &b = o.cells_[i];
    if (a.src_c != b.src_c || a.dst_c != b.dst_c || !(a.src_lo == b.src_lo) ||
        !(a.src_hi == b.src_hi) || !(a.dst_lo == b.dst_lo))
      return false;
  }
  return true;
}

std::size_t Iet::hash() const {
  std::size_t h = 0x51ed270b;
  for (const Cell& c : cells_) {
    h = hash_combine(h, hash_combine(c.src_c, c.dst_c));
    h = hash_combine(h, c.src_lo.hash());
    h = hash_combine(h, c.src_hi.hash());
    h = hash_combine(h, c.dst_lo.hash());
  }
  return h;
}

std::string Iet::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (i) os << "  ";
    os << dom_->component(c.src_c).label << "[" << c.src_lo.str() << "," << c.src_hi.str()
       << ")->" << dom_->component(c.dst_c).label << "@" << c.dst_lo.str();
  }
  return os.str();
}

std::vector<Point> Iet::discontinuities() const {
  std::vector<Point> disc;
  for (std::size_t comp = 0; comp < dom_->size(); ++comp) {
    auto [b, e] = comp_range_[comp];
    bool circle = dom_->component(comp).kind == ComponentKind::Circle;
    for (std::size_t i = b; i < e; ++i) {
      const Cell& cur = cells_[i];
      bool at_zero = cur.src_lo.is_zero();
      if (at_zero && !circle) continue;  // interval left end is boundary, not interior
      // Left limit comes from the preceding cell, wrapping around on circles.
      const Cell& prev = (i == b) ? cells_[e - 1] : cells_[i - 1];
      ExactReal limit = prev.dst_lo + cell_len(prev);  // sup of prev's image
      std::uint32_t limit_comp = prev.dst_c;
      bool limit_is_point = true;
      if (limit == dom_->component(limit_comp).length) {
        if (dom_->component(limit_comp).kind == ComponentKind::Circle)
          limit = dom_->zero();  // the limit wraps to coordinate 0
        else
          limit_is_point = false;  // approaches the open right end of an interval
      }
      bool continuous = limit_is_point && limit_comp == cur.dst_c && limit == cur.dst_lo;
      if (!continuous) disc.push_back(Point{dom_, cur.src_c, cur.src_lo});
    }
  }
  return disc;
}

Subdomain Iet::image_of(const Subdomain& s) const {
  if (!same_domain(s.domain(), dom_)) throw Error("subdomain from a different domain");
  std::vector<Arc> out;
  for (const Arc& a : s.arcs()) {
    auto [b, e] = comp_range_[a.comp];
    for (std::size_t i = b; i < e; ++i) {
      const Cell& c = cells_[i];
      const ExactReal& lo = cmp(c.src_lo, a.start) == Ordering::GT ? c.src_lo : a.start;
      const ExactReal& hi = cmp(c.src_hi, a.end) == Ordering::LT ? c.src_hi : a.end;
      if (cmp(lo, hi) != Ordering::LT) continue;
      out.push_back(Arc{c.dst_c, c.dst_lo + (lo - c.src_lo), c.dst_lo + (hi - c.src_lo)});
    }
  }
  return Subdomain::make(dom_, std::move(out));
}

Subdomain Iet::preimage_of(const Subdomain& s) const { return inverse().image_of(s); }

bool Iet::is_invariant(const Subdomain& s) const { return image_of(s) == s; }

// ---------------------------------------------------------------------------
// builders

Iet rotation(DomainPtr d, std::size_t comp, const ExactReal& angle) {
  if (comp >= d->size()) throw Error("component out of range");
  const Component& c = d->component(comp);
  if (c.kind != ComponentKind::Circle)
    throw Error("rotation needs a circle component, got '" + c.label + "'");
  ExactReal t = mod_interval(angle, c.length);
  std::vector<Cell> cells;
  auto cc = static_cast<std::uint32_t>(comp);
  if (t.is_zero()) {
    cells.push_back(Cell{cc, d->zero(), c.length, cc, d->zero()});
  } else {
    cells.push_back(Cell{cc, d->zero(), c.length - t, cc, t});
    cells.push_back(Cell{cc, c.length - t, c.length, cc, d->zero()});
  }
  for (std::size_t i = 0; i < d->size(); ++i) {
    if (i == comp) continue;
    cells.push_back(Cell{static_cast<std::uint32_t>(i), d->zero(), d->component(i).length,
                         static_cast<std::uint32_t>(i), d->zero()});
  }
  return Iet::from_cells(std::move(d), std::move(cells));
}

Iet synchronized_rotation(DomainPtr d, const ExactReal& angle) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < d->size(); ++i) {
    const Component& c = d->component(i);
    auto cc = static_cast<std::uint32_t>(i);
    if (c.kind == ComponentKind::Circle) {
      ExactReal t = mod_interval(angle, c.length);
      if (!t.is_zero()) {
        cells.push_back(Cell{cc, d->zero(), c.length - t, cc, t});
        cells.push_back(Cell{cc, c.length - t, c.length, cc, d->zero()});
        continue;
      }
    }
    cells.push_back(Cell{cc, d->zero(), c.length, cc, d->zero()});
  }
  return Iet::from_cells(std::move(d), std::move(cells));
}

Iet component_permutation(DomainPtr d, const std::vector<std::uint32_t>& image) {
  if (image.size() != d->size()) throw Error("permutation size mismatch");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < d->size(); ++i) {
    if (image[i] >= d->size()) throw Error("permutation image out of range");
    if (!(d->component(i).length == d->component(image[i]).length))
      throw Error("component permutation between different lengths: '" +
                  d->component(i).label + "' -> '" + d->component(image[i]).label + "'");
    cells.push_back(
        Cell{static_cast<std::uint32_t>(i), d->zero(), d->component(i).length, image[i], d->zero()});
  }
  return Iet::from_cells(std::move(d), std::move(cells));
}

Iet fiber_permutation(DomainPtr d, const std::map<std::uint32_t, std::uint32_t>& comp_map,
                      const std::vector<std::pair<ExactReal, ExactReal>>& arcs) {
  // The moved components must form a permuted set of equal lengths.
  for (const auto& [c, c2] : comp_map) {
    if (c >= d->size() || c2 >= d->size()) throw Error("component out of range");
    if (!comp_map.count(c2)) throw Error("fiber permutation image leaves its own support");
    if (!(d->component(c).length == d->component(c2).length))
      throw Error("fiber permutation between components of different lengths");
  }
  std::vector<Cell> cells;
  for (const auto& [c, c2] : comp_map) {
    // support arcs map across, the complement stays put
    std::vector<Arc> raw;
    for (const auto& [s, e] : arcs) raw.push_back(Arc{c, s, e});
    Subdomain support = Subdomain::make(d, std::move(raw));
    for (const Arc& a : support.arcs()) cells.push_back(Cell{c, a.start, a.end, c2, a.start});
    Subdomain rest = Subdomain::of_component(d, c).setminus(support);
    for (const Arc& a : rest.arcs()) cells.push_back(Cell{c, a.start, a.end, c, a.start});
  }
  for (std::size_t i = 0; i < d->size(); ++i) {
    if (comp_map.count(static_cast<std::uint32_t>(i))) continue;
    cells.push_back(Cell{static_cast<std::uint32_t>(i), d->zero(), d->component(i).length,
                         static_cast<std::uint32_t>(i), d->zero()});
  }
  return Iet::from_cells(std::move(d), std::move(cells));
}

NormEstimate norm_estimate(const Iet& t, int n_max) {
  NormEstimate r;
  Iet p = Iet::identity(t.domain());
  for (int n = 1; n <= n_max; ++n) {
    p = t.compose(p);
    std::size_t d = p.disc_count();
    Rational ratio(static_cast<long>(d), n);
    ratio.canonicalize();
    r.rows.push_back(NormEstimate::Row{n, d, ratio});
  }
  return r;
}

// ---------------------------------------------------------------------------
// DomainMap

DomainMap DomainMap::make(DomainPtr src, DomainPtr dst, std::vector<Cell> cells) {
  if (!src || !dst) throw Error("null domain");
  std::vector<Cell> kept;
  for (auto& c : cells) {
    if (c.src_c >= src->size() || c.dst_c >= dst->size())
      throw Error("map cell component out of range");
    Ordering o = cmp(c.src_lo, c.src_hi);
    if (o == Ordering::EQ) continue;
    if (o == Ordering::GT) throw Error("map cell with reversed bounds");
    if (sign(c.src_lo) < 0 ||
        cmp(c.src_hi, src->component(c.src_c).length) == Ordering::GT)
      throw Error("map cell outside its source component");
    if (sign(c.dst_lo) < 0 ||
        cmp(c.dst_lo + cell_len(c), dst->component(c.dst_c).length) == Ordering::GT)
      throw Error("map cell outside its target component");
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(), cell_src_less);
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i].src_c == kept[i - 1].src_c &&
        cmp(kept[i].src_lo, kept[i - 1].src_hi) == Ordering::LT)
      throw Error("map cells overlap on the source side");
  {
    auto by_dst = invert_cells(kept);
    for (std::size_t i = 1; i < by_dst.size(); ++i)
      if (by_dst[i].src_c == by_dst[i - 1].src_c &&
          cmp(by_dst[i].src_lo, by_dst[i - 1].src_hi) == Ordering::LT)
        throw Error("map cells overlap on the target side");
  }
  DomainMap m;
  m.src_ = std::move(src);
  m.dst_ = std::move(dst);
  m.cells_ = std::move(kept);
  return m;
}

Point DomainMap::map(const Point& p) const {
  if (!same_domain(p.domain, src_)) throw Error("point from a different domain");
  for (const Cell& c : cells_)
    if (c.src_c == p.comp && cmp(c.src_lo, p.offset) != Ordering::GT &&
        cmp(p.offset, c.src_hi) == Ordering::LT)
      return Point{dst_, c.dst_c, c.dst_lo + (p.offset - c.src_lo)};
  throw Error("point outside the map's source cover: " + p.str());
}

Point DomainMap::unmap(const Point& p) const { return inverted().map(p); }

DomainMap DomainMap::inverted() const {
  DomainMap m;
  m.src_ = dst_;
  m.dst_ = src_;
  m.cells_ = invert_cells(cells_);
  return m;
}

Subdomain DomainMap::push(const Subdomain& s) const {
  if (!same_domain(s.domain(), src_)) throw Error("subdomain from a different domain");
  std::vector<Arc> out;
  for (const Arc& a : s.arcs()) {
    ExactReal covered = src_->zero();
    for (const Cell& c : cells_) {
      if (c.src_c != a.comp) continue;
      const ExactReal& lo = cmp(c.src_lo, a.start) == Ordering::GT ? c.src_lo : a.start;
      const ExactReal& hi = cmp(c.src_hi, a.end) == Ordering::LT ? c.src_hi : a.end;
      if (cmp(lo, hi) != Ordering::LT) continue;
      covered = covered + (hi - lo);
      out.push_back(Arc{c.dst_c, c.dst_lo + (lo - c.src_lo), c.dst_lo + (hi - c.src_lo)});
    }
    if (!(covered == a.end - a.start))
      throw Error("subdomain escapes the map's source cover");
  }
  return Subdomain::make(dst_, std::move(out));
}

Subdomain DomainMap::pull(const Subdomain& s) const { return inverted().push(s); }

Iet DomainMap::conjugate(const Iet& t) const {
  if (!same_domain(t.domain(), src_)) throw Error("conjugating across the wrong domain");
  auto inv = invert_cells(cells_);
  auto mid = compose_cell_lists(t.cells(), inv);
  return Iet::from_cells(dst_, compose_cell_lists(cells_, mid));
}

// ---------------------------------------------------------------------------
// cutting / restriction

CutResult cut_domain(DomainPtr d, const std::vector<Point>& cuts) {
  // Bucket the cut offsets per component, deduplicated and sorted.
  std::vector<std::vector<ExactReal>> at(d->size());
  for (const Point& p : cuts) {
    if (!same_domain(p.domain, d)) throw Error("cut point from a different domain");
    if (p.is_boundary()) throw Error("cut point must be interior: " + p.str());
    auto& v = at[p.comp];
    bool dup = false;
    for (const auto& x : v) dup = dup || x == p.offset;
    if (!dup) v.push_back(p.offset);
  }
  for (auto& v : at)
    std::sort(v.begin(), v.end(),
              [](const ExactReal& a, const ExactReal& b) { return cmp(a, b) == Ordering::LT; });

  std::vector<Component> comps;
  std::vector<Cell> phi;
  for (std::size_t i = 0; i < d->size(); ++i) {
    const Component& c = d->component(i);
    auto ci = static_cast<std::uint32_t>(i);
    const auto& v = at[i];
    auto piece_label = [&c](std::size_t k) {
      return k == 0 ? c.label : c.label + "." + std::to_string(k);
    };
    if (v.empty()) {
      phi.push_back(Cell{ci, d->zero(), c.length, static_cast<std::uint32_t>(comps.size()),
                         d->zero()});
      comps.push_back(c);
      continue;
    }
    if (c.kind == ComponentKind::Interval) {
      // pieces [0,v0), [v0,v1), ..., [vk,L); the leftmost keeps the label
      std::vector<ExactReal> bounds{d->zero()};
      bounds.insert(bounds.end(), v.begin(), v.end());
      bounds.push_back(c.length);
      for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        auto nc = static_cast<std::uint32_t>(comps.size());
        phi.push_back(Cell{ci, bounds[k], bounds[k + 1], nc, d->zero()});
        comps.push_back(Component{piece_label(k), ComponentKind::Interval,
                                  bounds[k + 1] - bounds[k]});
      }
    } else {
      // circle: k cuts yield k intervals, starting at the first cut; the last
      // piece wraps through 0
      for (std::size_t k = 0; k < v.size(); ++k) {
        auto nc = static_cast<std::uint32_t>(comps.size());
        if (k + 1 < v.size()) {
          phi.push_back(Cell{ci, v[k], v[k + 1], nc, d->zero()});
          comps.push_back(Component{piece_label(k), ComponentKind::Interval, v[k + 1] - v[k]});
        } else {
          ExactReal tail = c.length - v[k];
          phi.push_back(Cell{ci, v[k], c.length, nc, d->zero()});
          if (sign(v[0]) > 0) phi.push_back(Cell{ci, d->zero(), v[0], nc, tail});
          comps.push_back(Component{piece_label(k), ComponentKind::Interval, tail + v[0]});
        }
      }
    }
  }
  DomainPtr cut = Domain::make(std::move(comps), d->basis());
  DomainMap m = DomainMap::make(d, cut, std::move(phi));
  return CutResult{std::move(cut), std::move(m)};
}

RestrictResult restrict_domain(const Subdomain& s) {
  if (s.is_empty()) throw Error("cannot restrict to an empty subdomain");
  const DomainPtr& d = s.domain();
  std::vector<Component> comps;
  std::vector<Cell> embed;  // new -> old
  std::size_t arc_idx = 0;
  std::uint32_t prev_comp = s.arcs().front().comp;
  for (const Arc& a : s.arcs()) {
    if (a.comp != prev_comp) {
      arc_idx = 0;
      prev_comp = a.comp;
    }
    const Component& c = d->component(a.comp);
    bool whole_circle =
        c.kind == ComponentKind::Circle && a.start.is_zero() && a.end == c.length;
    std::string label = whole_circle ? c.label : c.label + "[" + std::to_string(arc_idx) + "]";
    auto nc = static_cast<std::uint32_t>(comps.size());
    embed.push_back(Cell{nc, d->zero(), a.end - a.start, a.comp, a.start});
    comps.push_back(Component{std::move(label),
                              whole_circle ? ComponentKind::Circle : ComponentKind::Interval,
                              a.end - a.start});
    ++arc_idx;
  }
  DomainPtr part = Domain::make(std::move(comps), d->basis());
  DomainMap m = DomainMap::make(part, d, std::move(embed));
  return RestrictResult{std::move(part), std::move(m)};
}

Iet restrict_to(const Iet& t, const Subdomain& s) {
  if (!t.is_invariant(s)) throw Error("restriction to a non-invariant subdomain");
  RestrictResult r = restrict_domain(s);
  return r.embed.inverted().conjugate(t);
}

// ---------------------------------------------------------------------------
// GroupTable / finite extension

GroupTable GroupTable::make(std::vector<std::vector<std::uint32_t>> mul) {
  std::size_t n = mul.size();
  if (n == 0) throw Error("invalid group table: empty");
  for (const auto& row : mul) {
    if (row.size() != n) throw Error("invalid group table: not square");
    for (auto v : row)
      if (v >= n) throw Error("invalid group table: entry out of range");
  }
  // Latin square rows and columns.
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> seen_r(n, false), seen_c(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen_r[mul[a][b]]) throw Error("invalid group table: repeated entry in a row");
      seen_r[mul[a][b]] = true;
      if (seen_c[mul[b][a]]) throw Error("invalid group table: repeated entry in a column");
      seen_c[mul[b][a]] = true;
    }
  }
  std::optional<std::uint32_t> id;
  for (std::uint32_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a)
      ok = ok && mul[e][a] == a && mul[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw Error("invalid group table: no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw Error("invalid group table: not associative");
  GroupTable t;
  t.mul = std::move(mul);
  t.identity = *id;
  return t;
}

std::uint32_t GroupTable::inverse(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < order(); ++b)
    if (mul[a][b] == identity) return b;
  throw Error("invalid group table: missing inverse");
}

bool GroupTable::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

GroupTable GroupTable::cyclic(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a][b] = static_cast<std::uint32_t>((a + b) % n);
  return make(std::move(mul));
}

GroupTable GroupTable::symmetric3() {
  auto perms = symmetric3_action();
  std::size_t n = perms.size();
  auto index_of = [&perms](const std::vector<std::uint32_t>& p) -> std::uint32_t {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<std::uint32_t>(i);
    throw Error("unreachable");
  };
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::uint32_t> ab(3);
      for (int x = 0; x < 3; ++x) ab[x] = perms[a][perms[b][x]];  // apply b first
      mul[a][b] = index_of(ab);
    }
  return make(std::move(mul));
}

std::vector<std::vector<std::uint32_t>> symmetric3_action() {
  return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
}

ExtensionResult induce_finite_extension(DomainPtr base,
                                        const std::vector<std::pair<std::string, Iet>>& gens,
                                        const GroupTable& q) {
  std::size_t nb = base->size(), nq = q.order();
  std::vector<Component> comps;
  for (std::size_t j = 0; j < nq; ++j)
    for (std::size_t c = 0; c < nb; ++c) {
      const Component& bc = base->component(c);
      comps.push_back(
          Component{"q" + std::to_string(j) + ":" + bc.label, bc.kind, bc.length});
    }
  DomainPtr dom = Domain::make(std::move(comps), base->basis());
  auto slot = [nb](std::size_t j, std::uint32_t c) {
    return static_cast<std::uint32_t>(j * nb + c);
  };

  ExtensionResult out;
  out.domain = dom;
  for (const auto& [name, t] : gens) {
    if (!same_domain(t.domain(), base)) throw Error("generator on a different base domain");
    for (std::size_t j = 0; j < nq; ++j) {
      std::vector<Cell> cells;
      for (const Cell& c : t.cells())
        cells.push_back(Cell{slot(j, c.src_c), c.src_lo, c.src_hi, slot(j, c.dst_c), c.dst_lo});
      for (std::size_t j2 = 0; j2 < nq; ++j2) {
        if (j2 == j) continue;
        for (std::size_t c = 0; c < nb; ++c)
          cells.push_back(Cell{slot(j2, static_cast<std::uint32_t>(c)), base->zero(),
                               base->component(c).length,
                               slot(j2, static_cast<std::uint32_t>(c)), base->zero()});
      }
      out.generators.emplace_back(name + "@q" + std::to_string(j),
                                  Iet::from_cells(dom, std::move(cells)));
    }
  }
  for (std::uint32_t a = 0; a < nq; ++a) {
    if (a == q.identity) continue;
    std::vector<std::uint32_t> image(nq * nb);
    for (std::uint32_t j = 0; j < nq; ++j)
      for (std::uint32_t c = 0; c < nb; ++c) image[slot(j, c)] = slot(q.times(a, j), c);
    out.generators.emplace_back("q" + std::to_string(a), component_permutation(dom, image));
  }
  return out;
}

}  // namespace ietk
