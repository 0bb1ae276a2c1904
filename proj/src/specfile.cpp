#include "entcover/specfile.hpp"

#include <fstream>

#include "entcover/errors.hpp"

namespace entcover {

namespace {

void require_keys(const Json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw validation_error(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw validation_error("unknown field '" + it.key() + "' in " + where);
  }
}

int require_int(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw validation_error(where + " needs integer field '" + key + "'");
  return j[key].get<int>();
}

PointSet point_set_from_json(const Json& j, int n_points, const std::string& where) {
  if (!j.is_array()) throw validation_error(where + " must be an array of points");
  PointSet out = 0;
  for (const Json& p : j) {
    if (!p.is_number_integer())
      throw validation_error(where + " must contain point indices");
    int x = p.get<int>();
    if (x < 0 || x >= n_points)
      throw validation_error(where + " point index out of range");
    out |= PointSet{1} << x;
  }
  return out;
}

}  // namespace

Json element_to_json(const Element& g) {
  Json out = Json::array();
  for (Int x : g.v) out.push_back(x);
  return out;
}

Element element_from_json(const Json& j) {
  if (!j.is_array()) throw validation_error("element must be an array of integers");
  Element g;
  for (const Json& x : j) {
    if (!x.is_number_integer()) throw validation_error("element entry must be integer");
    g.v.push_back(x.get<Int>());
  }
  return g;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw validation_error("rational with zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw validation_error("malformed rational '" + s + "'");
  }
}

std::string rational_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

SpecFile parse_spec(const Json& j, std::size_t ball_cap) {
  require_keys(j, "spec", {"version", "group", "action", "subshift", "observables"});
  if (!j.contains("version") || j["version"] != "1")
    throw validation_error("spec version must be \"1\"");
  if (!j.contains("group")) throw validation_error("spec needs a group block");

  SpecFile spec;
  spec.raw = j;

  const Json& gj = j["group"];
  require_keys(gj, "group",
               {"family", "dimension", "rank", "order", "degree", "generators"});
  if (!gj.contains("family") || !gj["family"].is_string())
    throw validation_error("group needs a family tag");
  const std::string family = gj["family"].get<std::string>();
  Family fam;
  int param;
  if (family == "integer_lattice") {
    fam = Family::IntegerLattice;
    param = require_int(gj, "group", "dimension");
  } else if (family == "free") {
    fam = Family::FreeGroup;
    param = require_int(gj, "group", "rank");
  } else if (family == "cyclic") {
    fam = Family::Cyclic;
    param = require_int(gj, "group", "order");
  } else if (family == "permutation") {
    fam = Family::Permutation;
    param = require_int(gj, "group", "degree");
  } else {
    throw validation_error("unknown group family '" + family + "'");
  }
  if (!gj.contains("generators") || !gj["generators"].is_array())
    throw validation_error("group needs a generator list");
  std::vector<Element> gens;
  for (const Json& e : gj["generators"]) gens.push_back(element_from_json(e));
  spec.group = std::make_shared<GroupModel>(fam, param, std::move(gens), ball_cap);
  spec.group->audit();

  if (j.contains("action") && j.contains("subshift"))
    throw validation_error("spec may contain either an action or a subshift, not both");

  if (j.contains("action")) {
    const Json& aj = j["action"];
    require_keys(aj, "action", {"points", "open_basis", "generator_maps", "covers"});
    int n_points = require_int(aj, "action", "points");
    if (!aj.contains("open_basis") || !aj["open_basis"].is_array())
      throw validation_error("action needs an open_basis");
    std::vector<PointSet> basis;
    for (const Json& b : aj["open_basis"])
      basis.push_back(point_set_from_json(b, n_points, "open_basis set"));
    FiniteSpace space(n_points, std::move(basis));
    if (!aj.contains("generator_maps") || !aj["generator_maps"].is_array())
      throw validation_error("action needs generator_maps");
    std::vector<Perm> maps;
    for (const Json& m : aj["generator_maps"]) {
      if (!m.is_array()) throw validation_error("generator map must be an array");
      Perm p;
      for (const Json& x : m) p.push_back(x.get<int>());
      maps.push_back(std::move(p));
    }
    spec.action.emplace(spec.group, space, std::move(maps));
    if (aj.contains("covers")) {
      if (!aj["covers"].is_object())
        throw validation_error("covers must map names to member lists");
      for (auto it = aj["covers"].begin(); it != aj["covers"].end(); ++it) {
        std::vector<PointSet> members;
        for (const Json& m : it.value())
          members.push_back(point_set_from_json(m, n_points, "cover member"));
        spec.covers.emplace(it.key(), Cover(spec.action->space(), members));
      }
    }
  }

  if (j.contains("subshift")) {
    const Json& sj = j["subshift"];
    require_keys(sj, "subshift", {"alphabet", "forbidden"});
    int alphabet = require_int(sj, "subshift", "alphabet");
    std::vector<SubshiftPattern> forbidden;
    if (sj.contains("forbidden")) {
      if (!sj["forbidden"].is_array())
        throw validation_error("forbidden must be a pattern list");
      for (const Json& pj : sj["forbidden"]) {
        require_keys(pj, "forbidden pattern", {"cells"});
        if (!pj.contains("cells") || !pj["cells"].is_array())
          throw validation_error("forbidden pattern needs cells");
        SubshiftPattern p;
        for (const Json& cj : pj["cells"]) {
          if (!cj.is_array() || cj.size() != 2)
            throw validation_error("pattern cell must be [element, symbol]");
          p.cells.emplace_back(element_from_json(cj[0]), cj[1].get<int>());
        }
        forbidden.push_back(std::move(p));
      }
    }
    spec.subshift =
        std::make_shared<SubshiftModel>(alphabet, spec.group, std::move(forbidden));
  }

  if (j.contains("observables")) {
    if (!j["observables"].is_array())
      throw validation_error("observables must be a list");
    if (!spec.action)
      throw validation_error("observables require an action block");
    for (const Json& oj : j["observables"]) {
      require_keys(oj, "observable", {"name", "values"});
      Observable f;
      if (oj.contains("name")) f.name = oj["name"].get<std::string>();
      if (!oj.contains("values") || !oj["values"].is_array())
        throw validation_error("observable needs values");
      for (const Json& v : oj["values"]) {
        if (v.is_number_integer())
          f.values.push_back(Rational(v.get<long long>()));
        else if (v.is_string())
          f.values.push_back(parse_rational(v.get<std::string>()));
        else
          throw validation_error("observable values must be integers or rationals");
      }
      if (static_cast<int>(f.values.size()) != spec.action->space().size())
        throw validation_error("observable has wrong number of values");
      spec.observables.push_back(std::move(f));
    }
  }
  return spec;
}

SpecFile load_spec(const std::string& path, std::size_t ball_cap) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open spec file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw validation_error("spec file parse error: " + std::string(e.what()));
  }
  return parse_spec(j, ball_cap);
}

}  // namespace entcover
