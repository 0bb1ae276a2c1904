#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "entcover/action.hpp"
#include "entcover/amenability.hpp"
#include "entcover/subshift.hpp"

namespace entcover {

using Json = nlohmann::json;

// Parsed problem description: a group plus either a finite action (with
// named covers and optional observables) or a subshift. Unknown fields
// are rejected so that typos fail loudly.
struct SpecFile {
  Json raw;
  std::shared_ptr<const GroupModel> group;
  std::optional<FiniteAction> action;
  std::map<std::string, Cover> covers;
  std::shared_ptr<const SubshiftModel> subshift;
  std::vector<Observable> observables;
};

SpecFile parse_spec(const Json& j, std::size_t ball_cap);
SpecFile load_spec(const std::string& path, std::size_t ball_cap);

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

Json element_to_json(const Element& g);
Element element_from_json(const Json& j);

}  // namespace entcover
