#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ietk/constructions.hpp"
#include "ietk/imanishi.hpp"
#include "ietk/json_io.hpp"

namespace py = pybind11;
using namespace ietk;

namespace {

// Domains and bases travel as shared_ptr-to-const in C++; wrap them so the
// bindings own plain copyable handles.
struct PyBasis {
  BasisPtr b;
};
struct PyDomain {
  DomainPtr d;
};

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return py::int_(j.get<long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const Json& v : j) out.append(json_to_py(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
      return out;
    }
    default:
      return py::none();
  }
}

ExactReal py_exact(const PyBasis& b, const std::string& unit,
                   const std::map<std::string, std::string>& syms) {
  ExactReal x = ExactReal::rational(parse_rational(unit), b.b);
  for (const auto& [name, coeff] : syms)
    x = x + ExactReal::symbol(name, b.b).scaled(parse_rational(coeff));
  return x;
}

Subdomain py_subdomain(const PyDomain& d,
                       const std::vector<std::tuple<std::uint32_t, ExactReal, ExactReal>>& arcs) {
  std::vector<Arc> out;
  for (const auto& [c, s, e] : arcs) out.push_back(Arc{c, s, e});
  return Subdomain::make(d.d, std::move(out));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact arithmetic for finitely generated groups of interval exchanges";

  auto err = py::register_exception<Error>(m, "IetkError");
  py::register_exception<UndecidedComparison>(m, "UndecidedComparison", err.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", err.ptr());

  py::class_<PyBasis>(m, "Basis")
      .def(py::init([](const std::string& json_text) {
             return PyBasis{basis_from_json(Json::parse(json_text), "")};
           }),
           py::arg("json_text"), "Build a symbol basis from its JSON description.")
      .def_static(
          "simple",
          [](const std::string& name, const std::string& lo, const std::string& hi,
             const std::vector<long>& cf_terms) {
            SymbolSpec s;
            s.name = name;
            s.lo = parse_rational(lo);
            s.hi = parse_rational(hi);
            s.cf_terms = cf_terms;
            return PyBasis{SymbolBasis::make({std::move(s)})};
          },
          py::arg("name"), py::arg("lo"), py::arg("hi"), py::arg("cf_terms"),
          "One-symbol basis from an enclosure and continued-fraction terms.")
      .def("size", [](const PyBasis& b) { return b.b->size(); })
      .def("symbol_names", [](const PyBasis& b) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < b.b->size(); ++i) names.push_back(b.b->symbol(i).name);
        return names;
      });

  py::class_<ExactReal>(m, "ExactReal")
      .def_static(
          "rational",
          [](const std::string& q, const PyBasis& b) {
            return ExactReal::rational(parse_rational(q), b.b);
          },
          py::arg("q"), py::arg("basis"))
      .def_static(
          "symbol",
          [](const std::string& name, const PyBasis& b) { return ExactReal::symbol(name, b.b); },
          py::arg("name"), py::arg("basis"))
      .def_static("make", &py_exact, py::arg("basis"), py::arg("unit"),
                  py::arg("syms") = std::map<std::string, std::string>{})
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self)
      .def("scaled",
           [](const ExactReal& x, const std::string& q) { return x.scaled(parse_rational(q)); })
      .def("sign", [](const ExactReal& x) { return sign(x); })
      .def("cmp", [](const ExactReal& a, const ExactReal& b) {
        Ordering o = cmp(a, b);
        return o == Ordering::LT ? -1 : o == Ordering::GT ? 1 : 0;
      })
      .def("__lt__", [](const ExactReal& a, const ExactReal& b) { return cmp(a, b) == Ordering::LT; })
      .def("is_rational", &ExactReal::is_rational)
      .def("is_zero", &ExactReal::is_zero)
      .def("decimal", &ExactReal::decimal, py::arg("digits") = 12)
      .def("__str__", &ExactReal::str)
      .def("__repr__", [](const ExactReal& x) { return "ExactReal(" + x.str() + ")"; });

  py::class_<PyDomain>(m, "Domain")
      .def(py::init([](const std::string& json_text, const PyBasis& b) {
             return PyDomain{domain_from_json(Json::parse(json_text), b.b, "")};
           }),
           py::arg("json_text"), py::arg("basis"))
      .def_static(
          "circles",
          [](const std::vector<std::string>& labels, const PyBasis& b) {
            std::vector<Component> comps;
            for (const std::string& l : labels)
              comps.push_back({l, ComponentKind::Circle, ExactReal::rational(1, b.b)});
            return PyDomain{Domain::make(std::move(comps), b.b)};
          },
          py::arg("labels"), py::arg("basis"), "Unit circles with the given labels.")
      .def("size", [](const PyDomain& d) { return d.d->size(); })
      .def("label", [](const PyDomain& d, std::size_t i) { return d.d->component(i).label; })
      .def("zero", [](const PyDomain& d) { return d.d->zero(); })
      .def("__eq__",
           [](const PyDomain& a, const PyDomain& b) { return same_domain(a.d, b.d); });

  py::class_<Point>(m, "Point")
      .def(py::init([](const PyDomain& d, std::size_t comp, const ExactReal& off) {
             return Point::make(d.d, comp, off);
           }),
           py::arg("domain"), py::arg("comp"), py::arg("offset"))
      .def_readonly("comp", &Point::comp)
      .def_readonly("offset", &Point::offset)
      .def(py::self == py::self)
      .def("__str__", &Point::str);

  py::class_<Subdomain>(m, "Subdomain")
      .def(py::init(&py_subdomain), py::arg("domain"), py::arg("arcs"))
      .def_static("empty", [](const PyDomain& d) { return Subdomain::empty(d.d); })
      .def_static("whole", [](const PyDomain& d) { return Subdomain::whole(d.d); })
      .def("measure", &Subdomain::measure)
      .def("is_empty", &Subdomain::is_empty)
      .def("intersects", &Subdomain::intersects)
      .def("unite", &Subdomain::unite)
      .def("intersect", &Subdomain::intersect)
      .def("setminus", &Subdomain::setminus)
      .def("sym_diff", &Subdomain::sym_diff)
      .def("complement", &Subdomain::complement)
      .def("translated", &Subdomain::translated)
      .def("arcs",
           [](const Subdomain& s) {
             std::vector<std::tuple<std::uint32_t, ExactReal, ExactReal>> out;
             for (const Arc& a : s.arcs()) out.emplace_back(a.comp, a.start, a.end);
             return out;
           })
      .def(py::self == py::self)
      .def("__str__", &Subdomain::str);

  py::class_<Iet>(m, "Iet")
      .def_static("identity", [](const PyDomain& d) { return Iet::identity(d.d); })
      .def_static(
          "rotation",
          [](const PyDomain& d, std::size_t comp, const ExactReal& angle) {
            return rotation(d.d, comp, angle);
          },
          py::arg("domain"), py::arg("comp"), py::arg("angle"))
      .def_static(
          "synchronized_rotation",
          [](const PyDomain& d, const ExactReal& angle) {
            return synchronized_rotation(d.d, angle);
          },
          py::arg("domain"), py::arg("angle"))
      .def_static(
          "component_permutation",
          [](const PyDomain& d, const std::vector<std::uint32_t>& image) {
            return component_permutation(d.d, image);
          },
          py::arg("domain"), py::arg("image"))
      .def_static(
          "fiber_permutation",
          [](const PyDomain& d, const std::map<std::uint32_t, std::uint32_t>& comp_map,
             const std::vector<std::pair<ExactReal, ExactReal>>& arcs) {
            return fiber_permutation(d.d, comp_map, arcs);
          },
          py::arg("domain"), py::arg("comp_map"), py::arg("arcs"))
      .def_static(
          "from_json",
          [](const std::string& json_text, const PyDomain& d) {
            return iet_from_json(Json::parse(json_text), d.d, "");
          },
          py::arg("json_text"), py::arg("domain"))
      .def("apply", &Iet::apply)
      .def("apply_inverse", &Iet::apply_inverse)
      .def("compose", &Iet::compose)
      .def("inverse", &Iet::inverse)
      .def("power", &Iet::power)
      .def("is_identity", &Iet::is_identity)
      .def("disc_count", &Iet::disc_count)
      .def("image_of", &Iet::image_of)
      .def("preimage_of", &Iet::preimage_of)
      .def("is_invariant", &Iet::is_invariant)
      .def(py::self == py::self)
      .def("__hash__", &Iet::hash)
      .def("__str__", &Iet::str)
      .def("to_json", [](const Iet& t) { return json_to_py(iet_to_json(t)); });

  py::class_<FinGenGroup>(m, "FinGenGroup")
      .def(py::init([](const PyDomain& d,
                       const std::vector<std::pair<std::string, Iet>>& gens) {
             return FinGenGroup(d.d, gens);
           }),
           py::arg("domain"), py::arg("generators"))
      .def("generator_names",
           [](const FinGenGroup& g) {
             std::vector<std::string> names;
             for (const auto& [n, t] : g.generators()) names.push_back(n);
             return names;
           })
      .def(
          "ball_sizes",
          [](const FinGenGroup& g, int radius, std::size_t cap) {
            BallResult b = ball(g, radius, cap);
            return std::make_pair(b.by_radius, b.complete);
          },
          py::arg("radius"), py::arg("cap") = SIZE_MAX)
      .def(
          "orbit_sizes",
          [](const FinGenGroup& g, const Point& x, int radius, std::size_t cap) {
            OrbitResult o = orbit(g, x, radius, cap);
            return std::make_pair(o.by_radius, o.complete);
          },
          py::arg("x"), py::arg("radius"), py::arg("cap") = SIZE_MAX);

  m.def(
      "decompose",
      [](const FinGenGroup& g, std::size_t cap) {
        Decomposition dec = imanishi_decompose(g, cap);
        py::dict out;
        py::list irr, fin, res;
        for (const auto& p : dec.irreducible) irr.append(json_to_py(subdomain_to_json(p.part)));
        for (const auto& p : dec.finite_part) {
          py::dict f;
          f["part"] = json_to_py(subdomain_to_json(p.part));
          f["cardinality"] = p.cardinality;
          fin.append(f);
        }
        for (const auto& p : dec.residual_undecided) res.append(json_to_py(subdomain_to_json(p)));
        out["irreducible"] = irr;
        out["finite"] = fin;
        out["residual"] = res;
        out["complete"] = dec.complete();
        return out;
      },
      py::arg("group"), py::arg("cap") = 10000);

  m.def(
      "birkhoff_frequency",
      [](const Iet& t, const Point& x, const Subdomain& e, long n) {
        return birkhoff_frequency(t, x, e, n).get_str();
      },
      py::arg("t"), py::arg("x"), py::arg("set"), py::arg("n"));

  py::class_<Lamplighter>(m, "Lamplighter")
      .def(py::init([](const std::vector<unsigned>& factor_orders,
                       const std::vector<ExactReal>& angles, const PyBasis& basis,
                       const std::vector<std::pair<ExactReal, ExactReal>>& support,
                       bool allow_dependent_angles) {
             LampSpec sp;
             sp.factor_orders = factor_orders;
             sp.angles = angles;
             sp.support = support;
             sp.allow_dependent_angles = allow_dependent_angles;
             sp.basis = basis.b;
             return Lamplighter(std::move(sp));
           }),
           py::arg("factor_orders"), py::arg("angles"), py::arg("basis"),
           py::arg("support") = std::vector<std::pair<ExactReal, ExactReal>>{},
           py::arg("allow_dependent_angles") = false)
      .def("domain", [](const Lamplighter& ll) { return PyDomain{ll.domain()}; })
      .def("order_a", &Lamplighter::order_a)
      .def("generators",
           [](const Lamplighter& ll) { return ll.group().generators(); })
      .def("sigma", &Lamplighter::sigma, py::arg("a"), py::arg("pos"))
      .def("rotation_power", &Lamplighter::rotation_power, py::arg("n"))
      .def(
          "evaluate",
          [](const Lamplighter& ll,
             const std::map<std::vector<long>, std::vector<unsigned>>& lamp,
             const std::vector<long>& shift) {
            WreathNormalForm nf;
            nf.lamp = lamp;
            nf.shift = shift;
            return ll.evaluate(nf);
          },
          py::arg("lamp"), py::arg("shift"));

  m.def(
      "verify_wreath_embedding",
      [](const std::vector<unsigned>& factor_orders, const std::vector<ExactReal>& angles,
         const PyBasis& basis, int depth, std::size_t max_forms, bool allow_dependent_angles) {
        LampSpec sp;
        sp.factor_orders = factor_orders;
        sp.angles = angles;
        sp.basis = basis.b;
        sp.allow_dependent_angles = allow_dependent_angles;
        WreathCheckReport r = verify_wreath_embedding(sp, depth, max_forms);
        py::dict out;
        out["ok"] = r.ok;
        out["exhaustive"] = r.exhaustive;
        out["forms_checked"] = r.forms_checked;
        out["witness"] = r.witness ? py::cast(*r.witness) : py::object(py::none());
        return out;
      },
      py::arg("factor_orders"), py::arg("angles"), py::arg("basis"), py::arg("depth"),
      py::arg("max_forms") = 200000, py::arg("allow_dependent_angles") = false);

  py::class_<HjBuild>(m, "HjBuild")
      .def_property_readonly("base", [](const HjBuild& h) { return PyDomain{h.base}; })
      .def_property_readonly("domain", [](const HjBuild& h) { return PyDomain{h.domain}; })
      .def_property_readonly("sigma", [](const HjBuild& h) { return h.sigma; })
      .def_property_readonly("rot", [](const HjBuild& h) { return h.rot; })
      .def_property_readonly("tau", [](const HjBuild& h) { return h.tau; })
      .def_property_readonly("j0", [](const HjBuild& h) { return h.j0; })
      .def_property_readonly("i0", [](const HjBuild& h) { return h.i0; });

  m.def(
      "build_hj",
      [](const std::vector<std::pair<ExactReal, ExactReal>>& j_arcs, const ExactReal& alpha) {
        std::vector<Arc> arcs;
        for (const auto& [s, e] : j_arcs) arcs.push_back(Arc{0, s, e});
        return build_hj(arcs, alpha);
      },
      py::arg("j_arcs"), py::arg("alpha"));

  m.def("hj_tau_for", &hj_tau_for, py::arg("hj"), py::arg("k"));
  m.def(
      "hj_evaluate",
      [](const HjBuild& hj, long n, const std::map<long, unsigned>& f, const Subdomain& tau) {
        return hj_evaluate(hj, n, f, tau);
      },
      py::arg("hj"), py::arg("n"), py::arg("f"), py::arg("tau"));
  m.def(
      "hj_normal_form",
      [](const HjBuild& hj, const Iet& h) {
        HjElement e = hj_normal_form(hj, h);
        py::dict out;
        out["n"] = e.n;
        out["f"] = e.f;
        out["tau"] = e.tau;
        out["realized"] = e.realized;
        return out;
      },
      py::arg("hj"), py::arg("h"));
  m.def(
      "commutation_set",
      [](const HjBuild& hj, long n_count) {
        CommutationSet cs = commutation_set(hj, n_count);
        return std::make_pair(cs.set, cs.frequency.get_str());
      },
      py::arg("hj"), py::arg("n_count"));
  m.def("difference_set_measure", &difference_set_measure, py::arg("j"), py::arg("i"));

  m.def(
      "distinguish_invariant",
      [](const std::pair<ExactReal, ExactReal>& j1, const std::pair<ExactReal, ExactReal>& j2,
         const ExactReal& alpha) {
        DistinguishReport r = distinguish_invariant(j1, j2, alpha);
        py::dict out;
        out["invariant1"] = r.invariant1;
        out["invariant2"] = r.invariant2;
        out["invariants_differ"] = r.invariants_differ;
        if (r.span) {
          py::list coeffs;
          for (const Rational& c : *r.span) coeffs.append(c.get_str());
          out["span"] = coeffs;
        } else {
          out["span"] = py::none();
        }
        out["consistent_with_distinct"] = r.consistent_with_distinct;
        return out;
      },
      py::arg("j1"), py::arg("j2"), py::arg("alpha"));

  m.def(
      "wreath_obstruction_witness",
      [](const std::string& table_kind, const ExactReal& angle,
         const std::pair<ExactReal, ExactReal>& i_arc, long depth) {
        GroupTable table = GroupTable::cyclic(1);
        std::vector<std::vector<std::uint32_t>> action;
        if (table_kind == "symmetric3") {
          table = GroupTable::symmetric3();
          action = symmetric3_action();
        } else if (table_kind.rfind("cyclic:", 0) == 0) {
          std::size_t n = std::stoul(table_kind.substr(7));
          table = GroupTable::cyclic(n);
          action.assign(n, std::vector<std::uint32_t>(n));
          for (std::uint32_t g = 0; g < n; ++g)
            for (std::uint32_t c = 0; c < n; ++c) action[g][c] = table.times(g, c);
        } else {
          throw Error("table_kind must be \"symmetric3\" or \"cyclic:<n>\"");
        }
        ObstructionReport r = wreath_obstruction_witness(table, action, angle, i_arc, depth);
        py::dict out;
        out["found"] = r.found;
        out["n"] = r.n;
        out["g"] = r.g;
        out["h"] = r.h;
        out["overlaps"] = r.overlaps;
        return out;
      },
      py::arg("table_kind"), py::arg("angle"), py::arg("i_arc"), py::arg("depth"));

  m.def(
      "load_scene",
      [](const std::string& path) {
        Scene s = load_scene(path);
        py::dict out;
        out["basis"] = PyBasis{s.basis};
        out["domain"] = s.domain ? py::cast(PyDomain{s.domain}) : py::object(py::none());
        out["generators"] = s.generators;
        out["raw"] = json_to_py(s.raw);
        return out;
      },
      py::arg("path"), "Load a scene file; returns basis, domain, generators, raw document.");
}
