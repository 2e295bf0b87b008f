#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ietk/group.hpp"

namespace ietk {

using Json = nlohmann::json;

/// Input document problem, located by a JSON pointer into the document.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// --- writing ----------------------------------------------------------------
// Every numeric is emitted in its exact form together with a fixed-point
// decimal rendering, so downstream tools never have to re-derive either.

Json rational_to_json(const Rational& q);
Json exact_to_json(const ExactReal& x);
Json basis_to_json(const BasisPtr& b);
Json domain_to_json(const DomainPtr& d);
Json subdomain_to_json(const Subdomain& s);
Json iet_to_json(const Iet& t);
Json point_to_json(const Point& p);

// --- reading ----------------------------------------------------------------
// `where` is the JSON pointer of `v` in the enclosing document; all errors
// are SchemaErrors whose pointer extends it.

Rational rational_from_json(const Json& v, const std::string& where);
BasisPtr basis_from_json(const Json& v, const std::string& where,
                         std::optional<int> refine_budget_override = std::nullopt);
ExactReal exact_from_json(const Json& v, const BasisPtr& b, const std::string& where);
DomainPtr domain_from_json(const Json& v, const BasisPtr& b, const std::string& where);
Subdomain subdomain_from_json(const Json& v, const DomainPtr& d, const std::string& where);
Iet iet_from_json(const Json& v, const DomainPtr& d, const std::string& where);
Point point_from_json(const Json& v, const DomainPtr& d, const std::string& where);

/// A scene document: the symbol basis, optionally a domain with named
/// generators (rotations, component permutations, fiber permutations, or raw
/// cell lists), and the untouched document for command-specific sections.
struct Scene {
  BasisPtr basis;
  DomainPtr domain;  // null when the document declares no domain
  std::vector<std::pair<std::string, Iet>> generators;
  Json raw;
};

Scene scene_from_json(const Json& doc,
                      std::optional<int> refine_budget_override = std::nullopt);
Scene load_scene(const std::string& path,
                 std::optional<int> refine_budget_override = std::nullopt);

}  // namespace ietk
