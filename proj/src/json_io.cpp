#include "ietk/json_io.hpp"

#include <fstream>

namespace ietk {

namespace {

std::string ptr(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string ptr(const std::string& where, std::size_t i) {
  return where + "/" + std::to_string(i);
}

const Json& need(const Json& v, const std::string& key, const std::string& where) {
  if (!v.is_object()) throw SchemaError(where, "expected an object");
  auto it = v.find(key);
  if (it == v.end()) throw SchemaError(ptr(where, key), "missing");
  return *it;
}

const Json* maybe(const Json& v, const std::string& key) {
  if (!v.is_object()) return nullptr;
  auto it = v.find(key);
  return it == v.end() ? nullptr : &*it;
}

long need_long(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where, "expected an integer");
  return v.get<long>();
}

std::string need_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where, "expected a string");
  return v.get<std::string>();
}

const Json& need_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where, "expected an array");
  return v;
}

// Component reference: an index or a label.
std::size_t comp_from_json(const Json& v, const DomainPtr& d, const std::string& where) {
  if (v.is_number_integer()) {
    long c = v.get<long>();
    if (c < 0 || static_cast<std::size_t>(c) >= d->size())
      throw SchemaError(where, "component index out of range");
    return static_cast<std::size_t>(c);
  }
  if (v.is_string()) {
    auto idx = d->index_of(v.get<std::string>());
    if (!idx) throw SchemaError(where, "no component labeled \"" + v.get<std::string>() + "\"");
    return *idx;
  }
  throw SchemaError(where, "expected a component index or label");
}

std::pair<ExactReal, ExactReal> endpoints_from_json(const Json& v, const BasisPtr& b,
                                                    const std::string& where) {
  const Json& arr = need_array(v, where);
  if (arr.size() != 2) throw SchemaError(where, "expected [start, end]");
  return {exact_from_json(arr[0], b, ptr(where, std::size_t{0})),
          exact_from_json(arr[1], b, ptr(where, std::size_t{1}))};
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return Json{{"exact", q.get_str()}, {"decimal", decimal_str(q, 12)}};
}

Json exact_to_json(const ExactReal& x) {
  Json syms = Json::object();
  for (const auto& [i, c] : x.sym_coeffs()) syms[x.basis()->symbol(i).name] = c.get_str();
  return Json{{"unit", x.unit().get_str()}, {"syms", std::move(syms)}, {"decimal", x.decimal()}};
}

Json basis_to_json(const BasisPtr& b) {
  Json syms = Json::array();
  for (std::size_t i = 0; i < b->size(); ++i) {
    const SymbolSpec& s = b->symbol(i);
    syms.push_back(Json{{"name", s.name},
                        {"lo", s.lo.get_str()},
                        {"hi", s.hi.get_str()},
                        {"refiner", Json{{"kind", "continued_fraction"}, {"terms", s.cf_terms}}}});
  }
  return Json{{"symbols", std::move(syms)},
              {"independent", b->independent()},
              {"refine_budget", b->refine_budget()}};
}

Json domain_to_json(const DomainPtr& d) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < d->size(); ++i) {
    const Component& c = d->component(i);
    comps.push_back(Json{{"label", c.label},
                         {"kind", c.kind == ComponentKind::Circle ? "circle" : "interval"},
                         {"length", exact_to_json(c.length)}});
  }
  return Json{{"components", std::move(comps)}};
}

Json subdomain_to_json(const Subdomain& s) {
  Json arcs = Json::array();
  for (const Arc& a : s.arcs())
    arcs.push_back(Json{{"comp", a.comp},
                        {"label", s.domain()->component(a.comp).label},
                        {"start", exact_to_json(a.start)},
                        {"end", exact_to_json(a.end)}});
  return Json{{"arcs", std::move(arcs)}, {"measure", exact_to_json(s.measure())}};
}

Json iet_to_json(const Iet& t) {
  Json cells = Json::array();
  for (const Cell& c : t.cells())
    cells.push_back(Json{{"src_c", c.src_c},
                         {"src_start", exact_to_json(c.src_lo)},
                         {"src_end", exact_to_json(c.src_hi)},
                         {"dst_c", c.dst_c},
                         {"dst_start", exact_to_json(c.dst_lo)}});
  return Json{{"cells", std::move(cells)}};
}

Json point_to_json(const Point& p) {
  return Json{{"c", p.comp},
              {"label", p.domain->component(p.comp).label},
              {"offset", exact_to_json(p.offset)}};
}

Rational rational_from_json(const Json& v, const std::string& where) {
  // accepted forms: "p/q" or "p" as a string, a plain integer, or the
  // emitted object form (whose "exact" field wins)
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_object()) return rational_from_json(need(v, "exact", where), ptr(where, "exact"));
  if (!v.is_string()) throw SchemaError(where, "expected a rational as \"p/q\"");
  try {
    Rational q(v.get<std::string>());
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw SchemaError(where, "malformed rational \"" + v.get<std::string>() + "\"");
  }
}

BasisPtr basis_from_json(const Json& v, const std::string& where,
                         std::optional<int> refine_budget_override) {
  const Json& syms = need_array(need(v, "symbols", where), ptr(where, "symbols"));
  std::vector<SymbolSpec> specs;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    const std::string at = ptr(ptr(where, "symbols"), i);
    const Json& s = syms[i];
    SymbolSpec spec;
    spec.name = need_string(need(s, "name", at), ptr(at, "name"));
    spec.lo = rational_from_json(need(s, "lo", at), ptr(at, "lo"));
    spec.hi = rational_from_json(need(s, "hi", at), ptr(at, "hi"));
    if (const Json* r = maybe(s, "refiner")) {
      const std::string rat = ptr(at, "refiner");
      std::string kind = need_string(need(*r, "kind", rat), ptr(rat, "kind"));
      if (kind != "continued_fraction")
        throw SchemaError(ptr(rat, "kind"), "unknown refiner kind \"" + kind + "\"");
      const Json& terms = need_array(need(*r, "terms", rat), ptr(rat, "terms"));
      for (std::size_t j = 0; j < terms.size(); ++j)
        spec.cf_terms.push_back(need_long(terms[j], ptr(ptr(rat, "terms"), j)));
    }
    specs.push_back(std::move(spec));
  }
  bool independent = true;
  if (const Json* ind = maybe(v, "independent")) {
    if (!ind->is_boolean()) throw SchemaError(ptr(where, "independent"), "expected a boolean");
    independent = ind->get<bool>();
  }
  int budget = 64;
  if (const Json* bud = maybe(v, "refine_budget"))
    budget = static_cast<int>(need_long(*bud, ptr(where, "refine_budget")));
  if (refine_budget_override) budget = *refine_budget_override;
  try {
    return SymbolBasis::make(std::move(specs), independent, budget);
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

ExactReal exact_from_json(const Json& v, const BasisPtr& b, const std::string& where) {
  if (v.is_string() || v.is_number_integer())
    return ExactReal::rational(rational_from_json(v, where), b);
  if (!v.is_object()) throw SchemaError(where, "expected an exact number");
  ExactReal x = ExactReal::rational(0, b);
  if (const Json* unit = maybe(v, "unit"))
    x = ExactReal::rational(rational_from_json(*unit, ptr(where, "unit")), b);
  if (const Json* syms = maybe(v, "syms")) {
    if (!syms->is_object()) throw SchemaError(ptr(where, "syms"), "expected an object");
    for (const auto& [name, coeff] : syms->items()) {
      if (!b->index_of(name))
        throw SchemaError(ptr(ptr(where, "syms"), name), "symbol not in the basis");
      Rational c = rational_from_json(coeff, ptr(ptr(where, "syms"), name));
      x = x + ExactReal::symbol(name, b).scaled(c);
    }
  }
  return x;
}

DomainPtr domain_from_json(const Json& v, const BasisPtr& b, const std::string& where) {
  const Json& comps = need_array(need(v, "components", where), ptr(where, "components"));
  if (comps.empty()) throw SchemaError(ptr(where, "components"), "domain needs a component");
  std::vector<Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string at = ptr(ptr(where, "components"), i);
    const Json& c = comps[i];
    Component comp;
    comp.label = need_string(need(c, "label", at), ptr(at, "label"));
    std::string kind = need_string(need(c, "kind", at), ptr(at, "kind"));
    if (kind == "circle")
      comp.kind = ComponentKind::Circle;
    else if (kind == "interval")
      comp.kind = ComponentKind::Interval;
    else
      throw SchemaError(ptr(at, "kind"), "expected \"circle\" or \"interval\"");
    comp.length = exact_from_json(need(c, "length", at), b, ptr(at, "length"));
    out.push_back(std::move(comp));
  }
  try {
    return Domain::make(std::move(out), b);
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

Subdomain subdomain_from_json(const Json& v, const DomainPtr& d, const std::string& where) {
  const Json* arcs_node = maybe(v, "arcs");
  const Json& arr = need_array(arcs_node ? *arcs_node : v,
                               arcs_node ? ptr(where, "arcs") : where);
  const std::string base = arcs_node ? ptr(where, "arcs") : where;
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = ptr(base, i);
    const Json& a = arr[i];
    Arc arc;
    arc.comp = static_cast<std::uint32_t>(
        comp_from_json(need(a, "comp", at), d, ptr(at, "comp")));
    arc.start = exact_from_json(need(a, "start", at), d->basis(), ptr(at, "start"));
    arc.end = exact_from_json(need(a, "end", at), d->basis(), ptr(at, "end"));
    arcs.push_back(std::move(arc));
  }
  try {
    return Subdomain::make(d, std::move(arcs));
  } catch (const Error& e) {
    throw SchemaError(base, e.what());
  }
}

Iet iet_from_json(const Json& v, const DomainPtr& d, const std::string& where) {
  const BasisPtr& b = d->basis();
  try {
    if (const Json* rot = maybe(v, "rotation")) {
      const std::string at = ptr(where, "rotation");
      std::size_t comp = comp_from_json(need(*rot, "comp", at), d, ptr(at, "comp"));
      return rotation(d, comp, exact_from_json(need(*rot, "angle", at), b, ptr(at, "angle")));
    }
    if (const Json* rot = maybe(v, "synchronized_rotation")) {
      const std::string at = ptr(where, "synchronized_rotation");
      return synchronized_rotation(d, exact_from_json(need(*rot, "angle", at), b, ptr(at, "angle")));
    }
    if (const Json* perm = maybe(v, "component_permutation")) {
      const std::string at = ptr(where, "component_permutation");
      const Json& arr = need_array(*perm, at);
      std::vector<std::uint32_t> image;
      for (std::size_t i = 0; i < arr.size(); ++i)
        image.push_back(static_cast<std::uint32_t>(comp_from_json(arr[i], d, ptr(at, i))));
      return component_permutation(d, image);
    }
    if (const Json* fib = maybe(v, "fiber_permutation")) {
      const std::string at = ptr(where, "fiber_permutation");
      const Json& map_node = need_array(need(*fib, "map", at), ptr(at, "map"));
      std::map<std::uint32_t, std::uint32_t> comp_map;
      for (std::size_t i = 0; i < map_node.size(); ++i) {
        const std::string mat = ptr(ptr(at, "map"), i);
        const Json& pair = need_array(map_node[i], mat);
        if (pair.size() != 2) throw SchemaError(mat, "expected [from, to]");
        comp_map[static_cast<std::uint32_t>(comp_from_json(pair[0], d, ptr(mat, std::size_t{0})))] =
            static_cast<std::uint32_t>(comp_from_json(pair[1], d, ptr(mat, std::size_t{1})));
      }
      const Json& arcs_node = need_array(need(*fib, "arcs", at), ptr(at, "arcs"));
      std::vector<std::pair<ExactReal, ExactReal>> arcs;
      for (std::size_t i = 0; i < arcs_node.size(); ++i)
        arcs.push_back(endpoints_from_json(arcs_node[i], b, ptr(ptr(at, "arcs"), i)));
      return fiber_permutation(d, comp_map, arcs);
    }
    if (const Json* cells_node = maybe(v, "cells")) {
      const std::string at = ptr(where, "cells");
      const Json& arr = need_array(*cells_node, at);
      std::vector<Cell> cells;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string cat = ptr(at, i);
        const Json& c = arr[i];
        Cell cell;
        cell.src_c = static_cast<std::uint32_t>(
            comp_from_json(need(c, "src_c", cat), d, ptr(cat, "src_c")));
        cell.src_lo = exact_from_json(need(c, "src_start", cat), b, ptr(cat, "src_start"));
        cell.src_hi = exact_from_json(need(c, "src_end", cat), b, ptr(cat, "src_end"));
        cell.dst_c = static_cast<std::uint32_t>(
            comp_from_json(need(c, "dst_c", cat), d, ptr(cat, "dst_c")));
        cell.dst_lo = exact_from_json(need(c, "dst_start", cat), b, ptr(cat, "dst_start"));
        cells.push_back(std::move(cell));
      }
      return Iet::from_cells(d, std::move(cells));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
  throw SchemaError(where,
                    "expected one of rotation, synchronized_rotation, "
                    "component_permutation, fiber_permutation, cells");
}

Point point_from_json(const Json& v, const DomainPtr& d, const std::string& where) {
  std::size_t comp = comp_from_json(need(v, "c", where), d, ptr(where, "c"));
  ExactReal off = exact_from_json(need(v, "offset", where), d->basis(), ptr(where, "offset"));
  try {
    return Point::make(d, comp, std::move(off));
  } catch (const Error& e) {
    throw SchemaError(where, e.what());
  }
}

Scene scene_from_json(const Json& doc, std::optional<int> refine_budget_override) {
  if (!doc.is_object()) throw SchemaError("", "scene must be an object");
  if (const Json* ver = maybe(doc, "version")) {
    if (need_long(*ver, "/version") != 1) throw SchemaError("/version", "unsupported version");
  } else {
    throw SchemaError("/version", "missing");
  }
  Scene scene;
  scene.raw = doc;
  scene.basis = basis_from_json(need(doc, "basis", ""), "/basis", refine_budget_override);
  if (const Json* dom = maybe(doc, "domain"))
    scene.domain = domain_from_json(*dom, scene.basis, "/domain");
  if (const Json* gens = maybe(doc, "generators")) {
    if (!scene.domain) throw SchemaError("/domain", "generators need a domain");
    const Json& arr = need_array(*gens, "/generators");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string at = ptr("/generators", i);
      std::string name = need_string(need(arr[i], "name", at), ptr(at, "name"));
      scene.generators.emplace_back(name, iet_from_json(arr[i], scene.domain, at));
    }
  }
  return scene;
}

Scene load_scene(const std::string& path, std::optional<int> refine_budget_override) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open scene file \"" + path + "\"");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return scene_from_json(doc, refine_budget_override);
}

}  // namespace ietk
