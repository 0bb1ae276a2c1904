#include "entcover/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "entcover/dualball.hpp"
#include "entcover/errors.hpp"

namespace entcover {

namespace {

constexpr std::size_t kReportCertificateCap = 4096;

Json point_set_json(PointSet a) {
  Json out = Json::array();
  for (int x = 0; x < 64; ++x)
    if (a >> x & 1) out.push_back(x);
  return out;
}

Json cover_json(const Cover& c) {
  Json out = Json::array();
  for (PointSet s : c.sets) out.push_back(point_set_json(s));
  return out;
}

const char* method_name(CountMethod m) {
  switch (m) {
    case CountMethod::Exhaustive: return "exhaustive";
    case CountMethod::TransferMatrix: return "transfer_matrix";
    case CountMethod::LocallyAdmissible: return "locally_admissible";
  }
  return "unknown";
}

// Resolves the cover named by the selector; a single cover may be picked
// implicitly.
const Cover& select_cover(const SpecFile& spec, const std::string& selector) {
  if (spec.covers.empty())
    throw validation_error("spec declares no covers for the action");
  if (selector.empty()) {
    if (spec.covers.size() == 1) return spec.covers.begin()->second;
    throw validation_error("several covers declared; pick one with --cover");
  }
  auto it = spec.covers.find(selector);
  if (it == spec.covers.end())
    throw validation_error("no cover named '" + selector + "' in the spec");
  return it->second;
}

Json estimate_json(const EstimateReport& e) {
  Json out;
  out["slopes"] = e.slopes;
  out["tail_max"] = e.tail_max;
  out["last_slope"] = e.last_slope;
  out["stabilized_at"] = e.stabilized_at;
  return out;
}

Json run_complexity(const SpecFile& spec, const RunParams& params) {
  Json results;
  if (spec.action) {
    const Cover& u = select_cover(spec, params.cover);
    results["kind"] = "action";
    Json seq = Json::array();
    const auto& group = spec.action->group();
    for (int n = 1; n <= params.nmax; ++n) {
      auto r = min_refining_cover(*spec.action, u, group.ball(n).elements);
      Json row;
      row["n"] = n;
      row["value"] = r.value;
      row["exhaustive"] = r.exhaustive;
      row["lower_bound"] = r.lower_bound;
      row["optimal_cover"] = cover_json(r.optimal_cover);
      row["separated_points"] = r.separated_points;
      seq.push_back(std::move(row));
    }
    results["sequence"] = std::move(seq);
  } else if (spec.subshift) {
    results["kind"] = "subshift";
    Json seq = Json::array();
    for (int n = 1; n <= params.nmax; ++n) {
      SubshiftComplexity c =
          certified_complexity(*spec.subshift, n, kReportCertificateCap);
      Json row;
      row["n"] = n;
      row["count"] = c.value.str();
      row["method"] = method_name(c.method);
      row["exact"] = c.exact;
      row["certificate_complete"] = c.certificate_complete;
      Json cert;
      Json domain = Json::array();
      for (const Element& g : c.certificate.domain)
        domain.push_back(element_to_json(g));
      cert["domain"] = std::move(domain);
      cert["points"] = c.certificate.points;
      row["certificate"] = std::move(cert);
      seq.push_back(std::move(row));
    }
    results["sequence"] = std::move(seq);
  } else {
    throw validation_error("complexity needs an action or subshift block");
  }
  return results;
}

Json run_entropy(const SpecFile& spec, const RunParams& params) {
  Json results;
  if (spec.action) {
    const Cover& u = select_cover(spec, params.cover);
    results["kind"] = "action";
    Json seq = Json::array();
    for (auto [n, v] : complexity_sequence(*spec.action, u, params.nmax)) {
      Json row;
      row["n"] = n;
      row["value"] = v;
      seq.push_back(std::move(row));
    }
    results["sequence"] = std::move(seq);
    results["estimate"] = estimate_json(entropy_estimate(*spec.action, u, params.nmax));
  } else if (spec.subshift) {
    results["kind"] = "subshift";
    Json seq = Json::array();
    for (const auto& [n, c] : spec.subshift->count_sequence(params.nmax)) {
      Json row;
      row["n"] = n;
      row["count"] = c.str();
      seq.push_back(std::move(row));
    }
    results["sequence"] = std::move(seq);
    results["estimate"] = estimate_json(spec.subshift->entropy_estimate(params.nmax));
    if (spec.subshift->is_full_shift()) {
      // Closed form under the two-sided ball convention on Z^d.
      Json cf = Json::array();
      if (spec.group->family() == Family::IntegerLattice && spec.group->param() == 1) {
        double la = std::log2(static_cast<double>(spec.subshift->alphabet()));
        for (int n = 1; n <= params.nmax; ++n)
          cf.push_back(static_cast<double>(2 * n + 1) / n * la);
        results["full_shift_closed_form"] = std::move(cf);
      }
    }
  } else {
    throw validation_error("entropy needs an action or subshift block");
  }
  return results;
}

Json run_mean(const SpecFile& spec, const RunParams& params) {
  if (!spec.action)
    throw validation_error("mean construction needs an action block");
  ApproxInvariantMean m = construct_mean(*spec.action, spec.observables,
                                         parse_rational(params.epsilon), params.cap);
  Json results;
  results["kind"] = "mean";
  results["support"] = m.support;
  results["theta"] = rational_str(m.theta);
  results["epsilon"] = rational_str(m.epsilon);
  results["n_used"] = m.n_used;
  results["defect"] = rational_str(m.defect);
  results["cover_u0"] = cover_json(m.cover_u0);
  results["cover_u"] = cover_json(m.cover_u);
  results["cover_v"] = cover_json(m.cover_v);
  results["representatives"] = m.representatives;
  results["complexity_values"] = m.complexity_values;
  return results;
}

Json witness_json(const DualBallWitness& w) {
  Json out;
  out["n"] = w.n;
  Json s = Json::array(), t = Json::array(), supp = Json::array();
  for (const Element& g : w.s_seq) s.push_back(element_to_json(g));
  for (const Element& g : w.t_seq) t.push_back(element_to_json(g));
  for (const Element& g : w.supports) supp.push_back(element_to_json(g));
  out["s_seq"] = std::move(s);
  out["t_seq"] = std::move(t);
  out["supports"] = std::move(supp);
  Json f = Json::array();
  for (const auto& [g, val] : w.f)
    f.push_back(Json::array({element_to_json(g), rational_str(val)}));
  out["f"] = std::move(f);
  out["c"] = rational_str(w.c);
  Json pairing = Json::array();
  for (const auto& row : w.pairing) {
    Json r = Json::array();
    for (const Rational& p : row) r.push_back(rational_str(p));
    pairing.push_back(std::move(r));
  }
  out["pairing"] = std::move(pairing);
  return out;
}

DualBallWitness witness_from_json(const Json& j) {
  DualBallWitness w;
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw verification_error("witness block is malformed");
  w.n = j["n"].get<int>();
  for (const Json& e : j.at("s_seq")) w.s_seq.push_back(element_from_json(e));
  for (const Json& e : j.at("t_seq")) w.t_seq.push_back(element_from_json(e));
  for (const Json& e : j.at("supports")) w.supports.push_back(element_from_json(e));
  for (const Json& entry : j.at("f")) {
    if (!entry.is_array() || entry.size() != 2)
      throw verification_error("witness kernel entry is malformed");
    w.f[element_from_json(entry[0])] = parse_rational(entry[1].get<std::string>());
  }
  w.c = parse_rational(j.at("c").get<std::string>());
  for (const Json& row : j.at("pairing")) {
    std::vector<Rational> r;
    for (const Json& p : row) r.push_back(parse_rational(p.get<std::string>()));
    w.pairing.push_back(std::move(r));
  }
  return w;
}

Json run_lowerbound(const SpecFile& spec, const RunParams& params) {
  LowerBoundReport r = lower_bound_entropy(*spec.group, params.nmax);
  Json results;
  results["kind"] = "lowerbound";
  results["k"] = r.k;
  results["n"] = r.n;
  results["bound"] = rational_str(r.bound);
  results["separation"] = "2^" + std::to_string(r.n) + " members forced at radius " +
                          std::to_string(2 * r.k * r.n);
  results["witness"] = witness_json(r.witness);
  return results;
}

RunParams params_from_json(const Json& j) {
  RunParams p;
  p.nmax = j.at("nmax").get<int>();
  p.epsilon = j.at("epsilon").get<std::string>();
  p.cap = j.at("cap").get<int>();
  p.cover = j.at("cover").get<std::string>();
  p.ball_cap = j.at("ball_cap").get<std::size_t>();
  return p;
}

// First differing path between two JSON values, or nullopt when equal.
std::optional<std::string> first_diff(const Json& a, const Json& b,
                                      const std::string& path) {
  // Signed and unsigned integers unify after a serialization round trip.
  if (a.is_number() && b.is_number()) return a == b ? std::nullopt
                                                    : std::optional(path);
  if (a.type() != b.type()) return path + " (type mismatch)";
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return path + "/" + it.key() + " (missing)";
      if (auto d = first_diff(it.value(), b[it.key()], path + "/" + it.key()))
        return d;
    }
    for (auto it = b.begin(); it != b.end(); ++it)
      if (!a.contains(it.key())) return path + "/" + it.key() + " (extra)";
    return std::nullopt;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return path + " (length mismatch)";
    for (std::size_t i = 0; i < a.size(); ++i)
      if (auto d = first_diff(a[i], b[i], path + "/" + std::to_string(i)))
        return d;
    return std::nullopt;
  }
  if (a != b) return path;
  return std::nullopt;
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json run_command(const std::string& command, const Json& spec_json,
                 const RunParams& params) {
  SpecFile spec = parse_spec(spec_json, params.ball_cap);
  Json report;
  report["version"] = "1";
  report["command"] = command;
  Json pj;
  pj["nmax"] = params.nmax;
  pj["epsilon"] = params.epsilon;
  pj["cap"] = params.cap;
  pj["cover"] = params.cover;
  pj["ball_cap"] = params.ball_cap;
  report["params"] = std::move(pj);
  report["input"] = spec_json;
  report["input_digest"] = fnv1a64_hex(spec_json.dump());

  if (command == "complexity")
    report["results"] = run_complexity(spec, params);
  else if (command == "entropy")
    report["results"] = run_entropy(spec, params);
  else if (command == "mean")
    report["results"] = run_mean(spec, params);
  else if (command == "lowerbound")
    report["results"] = run_lowerbound(spec, params);
  else
    throw validation_error("unknown command '" + command + "'");
  return report;
}

void verify_report(const Json& report) {
  if (!report.is_object())
    throw verification_error("report is not a JSON object");
  for (const char* key : {"version", "command", "params", "input", "input_digest",
                          "results"})
    if (!report.contains(key))
      throw verification_error(std::string("report is missing '") + key + "'");
  if (report["version"] != "1")
    throw verification_error("unsupported report version");

  const Json& input = report["input"];
  if (fnv1a64_hex(input.dump()) != report["input_digest"].get<std::string>())
    throw verification_error("input digest mismatch: embedded spec was altered");

  const std::string command = report["command"].get<std::string>();
  RunParams params = params_from_json(report["params"]);

  // Certificate-level checks straight from the serialized data, before the
  // replay, so tampering is named precisely.
  if (command == "lowerbound") {
    SpecFile spec = parse_spec(input, params.ball_cap);
    DualBallWitness w = witness_from_json(report["results"].at("witness"));
    verify_witness(*spec.group, w);
    Rational bound = parse_rational(report["results"].at("bound").get<std::string>());
    int k = report["results"].at("k").get<int>();
    if (bound != Rational(1, 2 * k))
      throw verification_error("stated bound disagrees with 1/(2k)");
  }
  if (command == "complexity" && report["results"].value("kind", "") == "subshift") {
    SpecFile spec = parse_spec(input, params.ball_cap);
    for (const Json& row : report["results"].at("sequence")) {
      SubshiftComplexity c;
      c.n = row.at("n").get<int>();
      c.value = BigInt(row.at("count").get<std::string>());
      c.exact = row.at("exact").get<bool>();
      c.certificate_complete = row.at("certificate_complete").get<bool>();
      for (const Json& e : row.at("certificate").at("domain"))
        c.certificate.domain.push_back(element_from_json(e));
      c.certificate.points =
          row.at("certificate").at("points").get<std::vector<std::vector<int>>>();
      verify_certificate(*spec.subshift, c);
    }
  }

  Json replay = run_command(command, input, params);
  if (auto d = first_diff(report["results"], replay["results"], "results"))
    throw verification_error("replay disagrees at " + *d);
}

std::string report_to_csv(const Json& report) {
  const std::string command = report.at("command").get<std::string>();
  if (command != "complexity" && command != "entropy")
    throw validation_error("csv output covers complexity and entropy reports only");
  const Json& results = report.at("results");
  const Json* slopes = nullptr;
  if (results.contains("estimate")) slopes = &results["estimate"]["slopes"];
  std::string out = "n,value,slope\n";
  std::size_t i = 0;
  for (const Json& row : results.at("sequence")) {
    out += std::to_string(row.at("n").get<int>());
    out += ',';
    out += row.contains("count") ? row["count"].get<std::string>()
                                 : std::to_string(row.at("value").get<int>());
    out += ',';
    if (slopes && i < slopes->size())
      out += Json((*slopes)[i].get<double>()).dump();
    ++i;
    out += '\n';
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write to '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw validation_error("short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace entcover
