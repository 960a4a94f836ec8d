#include "sublinear/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kConfig, key + ": " + what);
}

void reject_unknown(const Json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

double get_number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(path, "must be a number");
  return v.get<double>();
}

std::size_t get_count(const Json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(path, "must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::uint64_t get_u64(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

AmbiguitySet parse_set(const Json& doc) {
  RawAmbiguitySet raw;
  if (doc.contains("lattice")) {
    const Json& lat = doc["lattice"];
    reject_unknown(lat, "lattice", {"step"});
    if (lat.contains("step")) raw.step = get_number(lat, "step", "lattice.step");
  }
  const Json& gens = doc.at("generators");
  if (!gens.is_array()) fail("generators", "must be an array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string path = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_array()) fail(path, "must be an array of [point, weight] pairs");
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t j = 0; j < gens[i].size(); ++j) {
      const Json& a = gens[i][j];
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        fail(path + "[" + std::to_string(j) + "]", "must be [point, weight]");
      }
      atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    raw.generators.push_back(std::move(atoms));
  }
  return validate_ambiguity_set(raw);
}

PathEvent parse_event(const Json& e) {
  reject_unknown(e, "event", {"kind", "threshold", "from_index", "complement"});
  if (!e.contains("kind") || !e["kind"].is_string()) fail("event.kind", "missing or not a string");
  const auto kind = parse_event_kind(e["kind"].get<std::string>());
  if (!kind) fail("event.kind", "unknown event kind " + e["kind"].get<std::string>());
  if (!e.contains("threshold")) fail("event.threshold", "missing");
  PathEvent ev;
  ev.kind = *kind;
  ev.threshold = get_number(e, "threshold", "event.threshold");
  if (e.contains("from_index")) ev.from_index = get_count(e["from_index"], "event.from_index");
  if (e.contains("complement")) {
    if (!e["complement"].is_boolean()) fail("event.complement", "must be a boolean");
    ev.complement = e["complement"].get<bool>();
  }
  return ev;
}

}  // namespace

TestFunction parse_function(const Json& node) {
  reject_unknown(node, "function", {"kind", "params"});
  if (!node.contains("kind") || !node["kind"].is_string()) {
    fail("function.kind", "missing or not a string");
  }
  const std::string kind = node["kind"].get<std::string>();
  const Json params = node.contains("params") ? node["params"] : Json::object();
  auto num = [&](const char* key) {
    const std::string path = std::string("function.params.") + key;
    if (!params.contains(key)) fail(path, "missing");
    return get_number(params, key, path);
  };
  try {
    if (kind == "piecewise_linear") {
      reject_unknown(params, "function.params", {"breakpoints"});
      if (!params.contains("breakpoints") || !params["breakpoints"].is_array()) {
        fail("function.params.breakpoints", "missing or not an array");
      }
      std::vector<Breakpoint> bps;
      for (const Json& b : params["breakpoints"]) {
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
          fail("function.params.breakpoints", "entries must be [x, value]");
        }
        bps.push_back({b[0].get<double>(), b[1].get<double>()});
      }
      return TestFunction::piecewise_linear(std::move(bps));
    }
    if (kind == "constant") {
      reject_unknown(params, "function.params", {"c"});
      return TestFunction::constant(num("c"));
    }
    if (kind == "abs" || kind == "square" || kind == "identity") {
      reject_unknown(params, "function.params", {});
      if (kind == "abs") return TestFunction::abs();
      if (kind == "square") return TestFunction::square();
      return TestFunction::identity();
    }
    if (kind == "clamp" || kind == "clamped_square") {
      reject_unknown(params, "function.params", {"n"});
      return kind == "clamp" ? TestFunction::clamp(num("n"))
                             : TestFunction::clamped_square(num("n"));
    }
    if (kind == "tent") {
      reject_unknown(params, "function.params", {"center", "halfwidth"});
      return TestFunction::tent(num("center"), num("halfwidth"));
    }
    if (kind == "psi") {
      reject_unknown(params, "function.params", {"n"});
      if (!params.contains("n")) fail("function.params.n", "missing");
      return TestFunction::psi(static_cast<int>(get_count(params["n"], "function.params.n")));
    }
    if (kind == "excess_abs") {
      reject_unknown(params, "function.params", {"lambda"});
      return TestFunction::excess_abs(num("lambda"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail("function", e.detail());
  }
  fail("function.kind", "unknown function kind " + kind);
}

Json function_to_json(const TestFunction& f) {
  using K = TestFunction::Kind;
  Json j;
  Json p = Json::object();
  switch (f.kind()) {
    case K::kPiecewiseLinear: {
      j["kind"] = "piecewise_linear";
      Json bps = Json::array();
      for (const auto& b : f.breakpoints()) bps.push_back({b.x, b.value});
      p["breakpoints"] = bps;
      break;
    }
    case K::kAbs: j["kind"] = "abs"; break;
    case K::kSquare: j["kind"] = "square"; break;
    case K::kIdentity: j["kind"] = "identity"; break;
    case K::kClamp: j["kind"] = "clamp"; p["n"] = f.param(0); break;
    case K::kClampedSquare: j["kind"] = "clamped_square"; p["n"] = f.param(0); break;
    case K::kTent:
      j["kind"] = "tent";
      p["center"] = f.param(0);
      p["halfwidth"] = f.param(1);
      break;
    case K::kPsi: j["kind"] = "psi"; p["n"] = static_cast<int>(f.param(0)); break;
    case K::kExcessAbs: j["kind"] = "excess_abs"; p["lambda"] = f.param(0); break;
  }
  j["params"] = p;
  return j;
}

RunConfig parse_config(const Json& doc) {
  reject_unknown(doc, "",
                 {"lattice", "generators", "family", "function", "horizons", "event", "alpha",
                  "c", "eps", "seed", "paths", "budgets", "out", "lambdas", "ms", "n_max",
                  "policy", "threads"});
  RunConfig cfg;
  try {
    if (doc.contains("generators")) {
      cfg.set = parse_set(doc);
    } else if (doc.contains("lattice")) {
      fail("lattice", "given without generators");
    }
    if (doc.contains("family")) {
      if (cfg.set) fail("family", "cannot be combined with generators");
      const Json& fam = doc["family"];
      reject_unknown(fam, "family", {"name", "truncation"});
      if (!fam.contains("name") || !fam["name"].is_string()) {
        fail("family.name", "missing or not a string");
      }
      const auto name = parse_family_name(fam["name"].get<std::string>());
      if (!name) fail("family.name", "unknown family " + fam["name"].get<std::string>());
      if (!fam.contains("truncation")) fail("family.truncation", "missing");
      cfg.family.emplace(*name, get_count(fam["truncation"], "family.truncation"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    const bool names_key = e.detail().rfind("generators", 0) == 0;
    throw Error(e.code(), names_key ? e.detail() : "family: " + e.detail());
  }
  if (doc.contains("function")) cfg.function = parse_function(doc["function"]);
  if (doc.contains("horizons")) {
    if (!doc["horizons"].is_array()) fail("horizons", "must be an array");
    for (const Json& h : doc["horizons"]) {
      const std::size_t n = get_count(h, "horizons");
      if (n < 1) fail("horizons", "entries must be >= 1");
      cfg.horizons.push_back(n);
    }
  }
  if (doc.contains("event")) cfg.event = parse_event(doc["event"]);
  if (doc.contains("alpha")) cfg.alpha = get_number(doc, "alpha", "alpha");
  if (doc.contains("c")) cfg.c = get_number(doc, "c", "c");
  if (doc.contains("eps")) cfg.eps = get_number(doc, "eps", "eps");
  if (doc.contains("seed")) cfg.seed = get_u64(doc["seed"], "seed");
  if (doc.contains("paths")) {
    cfg.paths = get_count(doc["paths"], "paths");
    if (cfg.paths < 1) fail("paths", "must be >= 1");
  }
  if (doc.contains("budgets")) {
    const Json& b = doc["budgets"];
    reject_unknown(b, "budgets", {"states", "enumeration"});
    if (b.contains("states")) cfg.state_budget = get_count(b["states"], "budgets.states");
    if (b.contains("enumeration")) {
      cfg.enumeration_budget = get_count(b["enumeration"], "budgets.enumeration");
    }
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) fail("out", "must be a string");
    cfg.out = doc["out"].get<std::string>();
  }
  if (doc.contains("lambdas")) {
    if (!doc["lambdas"].is_array()) fail("lambdas", "must be an array");
    for (const Json& l : doc["lambdas"]) {
      if (!l.is_number()) fail("lambdas", "entries must be numbers");
      cfg.lambdas.push_back(l.get<double>());
    }
  }
  if (doc.contains("ms")) {
    if (!doc["ms"].is_array()) fail("ms", "must be an array");
    for (const Json& m : doc["ms"]) cfg.ms.push_back(get_count(m, "ms"));
  }
  if (doc.contains("n_max")) cfg.n_max = get_count(doc["n_max"], "n_max");
  if (doc.contains("policy")) {
    const Json& p = doc["policy"];
    reject_unknown(p, "policy", {"kind", "generator"});
    const std::string kind = p.value("kind", std::string("robust"));
    if (kind == "robust") {
      cfg.policy.kind = PolicySpec::Kind::kRobust;
    } else if (kind == "constant") {
      cfg.policy.kind = PolicySpec::Kind::kConstant;
      if (!p.contains("generator")) fail("policy.generator", "missing");
      cfg.policy.generator = get_count(p["generator"], "policy.generator");
      if (cfg.set && cfg.policy.generator >= cfg.set->size()) {
        fail("policy.generator", "index out of range");
      }
    } else {
      fail("policy.kind", "must be robust or constant");
    }
  }
  if (doc.contains("threads")) {
    cfg.threads = static_cast<unsigned>(get_count(doc["threads"], "threads"));
    if (cfg.threads < 1) fail("threads", "must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail("--config", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const Json::parse_error& e) {
    fail("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace sublinear
