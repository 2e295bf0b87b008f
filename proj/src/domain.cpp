#include "ietk/domain.hpp"

#include <algorithm>
#include <sstream>

namespace ietk {

DomainPtr Domain::make(std::vector<Component> comps, BasisPtr basis) {
  if (comps.empty()) throw Error("domain needs at least one component");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (c.label.empty()) throw Error("component needs a label");
    for (std::size_t j = 0; j < i; ++j)
      if (comps[j].label == c.label) throw Error("duplicate component label '" + c.label + "'");
    if (c.length.basis() && c.length.basis() != basis)
      throw Error("component '" + c.label + "': length over a foreign basis");
    if (sign(c.length) <= 0) throw Error("component '" + c.label + "': length must be positive");
  }
  auto d = std::shared_ptr<Domain>(new Domain);
  d->comps_ = std::move(comps);
  d->basis_ = std::move(basis);
  return d;
}

std::optional<std::size_t> Domain::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < comps_.size(); ++i)
    if (comps_[i].label == label) return i;
  return std::nullopt;
}

std::size_t Domain::require_index(const std::string& label) const {
  auto i = index_of(label);
  if (!i) throw Error("no component labeled '" + label + "'");
  return *i;
}

ExactReal Domain::total_length() const {
  ExactReal t = zero();
  for (const auto& c : comps_) t = t + c.length;
  return t;
}

bool Domain::operator==(const Domain& o) const {
  if (comps_.size() != o.comps_.size()) return false;
  for (std::size_t i = 0; i < comps_.size(); ++i)
    if (comps_[i].label != o.comps_[i].label || comps_[i].kind != o.comps_[i].kind ||
        comps_[i].length != o.comps_[i].length)
      return false;
  return true;
}

bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Point

Point Point::make(DomainPtr d, std::size_t comp, ExactReal offset) {
  if (!d || comp >= d->size()) throw Error("point component out of range");
  if (sign(offset) < 0 || cmp(offset, d->component(comp).length) != Ordering::LT)
    throw Error("point offset outside [0, len) on component '" +
                d->component(comp).label + "': " + offset.str());
  return Point{std::move(d), static_cast<std::uint32_t>(comp), std::move(offset)};
}

Point Point::make(DomainPtr d, const std::string& label, ExactReal offset) {
  if (!d) throw Error("null domain");
  std::size_t i = d->require_index(label);
  return make(std::move(d), i, std::move(offset));
}

bool Point::operator==(const Point& o) const {
  return comp == o.comp && offset == o.offset && same_domain(domain, o.domain);
}

std::size_t Point::hash() const { return hash_combine(comp, offset.hash()); }

bool Point::is_boundary() const {
  return domain->component(comp).kind == ComponentKind::Interval && offset.is_zero();
}

std::string Point::str() const {
  return "(" + domain->component(comp).label + ", " + offset.str() + ")";
}

// ---------------------------------------------------------------------------
// Subdomain

Subdomain Subdomain::empty(DomainPtr d) {
  Subdomain s;
  s.dom_ = std::move(d);
  return s;
}

Subdomain Subdomain::whole(DomainPtr d) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < d->size(); ++i)
    arcs.push_back(Arc{static_cast<std::uint32_t>(i), d->zero(), d->component(i).length});
  return make(std::move(d), std::move(arcs));
}

Subdomain Subdomain::of_component(DomainPtr d, std::size_t comp) {
  if (comp >= d->size()) throw Error("component out of range");
  std::vector<Arc> arcs{Arc{static_cast<std::uint32_t>(comp), d->zero(), d->component(comp).length}};
  return make(std::move(d), std::move(arcs));
}

Subdomain Subdomain::make(DomainPtr d, std::vector<Arc> raw) {
  if (!d) throw Error("null domain");
  std::vector<Arc> arcs;
  for (auto& a : raw) {
    if (a.comp >= d->size()) throw Error("arc component out of range");
    const Component& c = d->component(a.comp);
    if (sign(a.start) < 0 || cmp(a.start, c.length) != Ordering::LT)
      throw Error("arc start outside [0, len) on '" + c.label + "'");
    if (a.end == a.start) continue;  // empty
    Ordering vs_len = cmp(a.end, c.length);
    if (cmp(a.end, a.start) == Ordering::GT && vs_len != Ordering::GT) {
      arcs.push_back(std::move(a));
      continue;
    }
    // Wrap notation: [start, end) passing through 0.  Two spellings are
    // accepted on circles: end <= start, or end > length.
    if (c.kind != ComponentKind::Circle)
      throw Error("arc exceeds interval component '" + c.label + "'");
    ExactReal end = vs_len == Ordering::GT ? a.end - c.length : a.end;
    if (cmp(end, a.start) == Ordering::GT)
      throw Error("arc wraps past its own start on '" + c.label + "'");
    arcs.push_back(Arc{a.comp, a.start, c.length});
    if (sign(end) > 0) arcs.push_back(Arc{a.comp, d->zero(), std::move(end)});
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    if (x.comp != y.comp) return x.comp < y.comp;
    return cmp(x.start, y.start) == Ordering::LT;
  });
  // Merge overlapping or touching arcs; half-open semantics make [a,b)+[b,c)
  // genuinely contiguous.
  std::vector<Arc> merged;
  for (auto& a : arcs) {
    if (!merged.empty() && merged.back().comp == a.comp &&
        cmp(a.start, merged.back().end) != Ordering::GT) {
      if (cmp(a.end, merged.back().end) == Ordering::GT) merged.back().end = std::move(a.end);
    } else {
      merged.push_back(std::move(a));
    }
  }
  Subdomain s;
  s.dom_ = std::move(d);
  s.arcs_ = std::move(merged);
  return s;
}

ExactReal Subdomain::measure() const {
  ExactReal t = dom_->zero();
  for (const auto& a : arcs_) t = t + (a.end - a.start);
  return t;
}

bool Subdomain::contains(const Point& p) const {
  for (const auto& a : arcs_) {
    if (a.comp != p.comp) continue;
    if (cmp(p.offset, a.start) != Ordering::LT && cmp(p.offset, a.end) == Ordering::LT)
      return true;
  }
  return false;
}

bool Subdomain::intersects(const Subdomain& o) const { return !intersect(o).is_empty(); }

Subdomain Subdomain::unite(const Subdomain& o) const {
  if (!same_domain(dom_, o.dom_)) throw Error("subdomain union across different domains");
  std::vector<Arc> arcs = arcs_;
  arcs.insert(arcs.end(), o.arcs_.begin(), o.arcs_.end());
  return make(dom_, std::move(arcs));
}

Subdomain Subdomain::intersect(const Subdomain& o) const {
  if (!same_domain(dom_, o.dom_)) throw Error("subdomain intersection across different domains");
  std::vector<Arc> out;
  for (const auto& a : arcs_)
    for (const auto& b : o.arcs_) {
      if (a.comp != b.comp) continue;
      const ExactReal& lo = cmp(a.start, b.start) == Ordering::GT ? a.start : b.start;
      const ExactReal& hi = cmp(a.end, b.end) == Ordering::LT ? a.end : b.end;
      if (cmp(lo, hi) == Ordering::LT) out.push_back(Arc{a.comp, lo, hi});
    }
  return make(dom_, std::move(out));
}

Subdomain Subdomain::complement() const {
  std::vector<Arc> out;
  std::size_t i = 0;
  for (std::size_t c = 0; c < dom_->size(); ++c) {
    ExactReal cursor = dom_->zero();
    for (; i < arcs_.size() && arcs_[i].comp == c; ++i) {
      if (cmp(cursor, arcs_[i].start) == Ordering::LT)
        out.push_back(Arc{static_cast<std::uint32_t>(c), cursor, arcs_[i].start});
      cursor = arcs_[i].end;
    }
    if (cmp(cursor, dom_->component(c).length) == Ordering::LT)
      out.push_back(Arc{static_cast<std::uint32_t>(c), cursor, dom_->component(c).length});
  }
  return make(dom_, std::move(out));
}

Subdomain Subdomain::setminus(const Subdomain& o) const { return intersect(o.complement()); }

Subdomain Subdomain::sym_diff(const Subdomain& o) const {
  return setminus(o).unite(o.setminus(*this));
}

Subdomain Subdomain::translated(const ExactReal& t) const {
  std::vector<Arc> out;
  for (const auto& a : arcs_) {
    const Component& c = dom_->component(a.comp);
    if (c.kind != ComponentKind::Circle)
      throw Error("translated() needs circle components, got interval '" + c.label + "'");
    ExactReal ns = mod_interval(a.start + t, c.length);
    // may wrap; make() splits it
    out.push_back(Arc{a.comp, ns, ns + (a.end - a.start)});
  }
  return make(dom_, std::move(out));
}

bool Subdomain::operator==(const Subdomain& o) const {
  if (!same_domain(dom_, o.dom_) || arcs_.size() != o.arcs_.size()) return false;
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (arcs_[i].comp != o.arcs_[i].comp || !(arcs_[i].start == o.arcs_[i].start) ||
        !(arcs_[i].end == o.arcs_[i].end))
      return false;
  return true;
}

std::size_t Subdomain::hash() const {
  std::size_t h = 0x5bd1e995;
  for (const auto& a : arcs_)
    h = hash_combine(h, hash_combine(a.comp, hash_combine(a.start.hash(), a.end.hash())));
  return h;
}

std::string Subdomain::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if (i) os << ", ";
    os << dom_->component(arcs_[i].comp).label << ":[" << arcs_[i].start.str() << ", "
       << arcs_[i].end.str() << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace ietk
