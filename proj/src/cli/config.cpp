#include "stieltjes/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "stieltjes/expr/evaluate.hpp"
#include "stieltjes/expr/parser.hpp"
#include "stieltjes/expr/to_integrand.hpp"
#include "stieltjes/improper.hpp"

namespace stieltjes::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : InvalidArgument((path.empty() ? std::string("config") : path) + ": " + message), path_(std::move(path)) {}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

double positive(const json& j, const std::string& path) {
  double v = number(j, path);
  if (!(v > 0.0)) throw ConfigError(path, "expected a positive number");
  return v;
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t unsigned_int(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

expr::ExprPtr compile(const std::string& source, const std::string& path) {
  try {
    return expr::parse(source);
  } catch (const expr::SyntaxError& e) {
    throw ConfigError(path, e.what());
  }
}

TailConfig parse_tail(const json& j, const std::string& path) {
  only_keys(j, path, {"start", "location", "mass", "remaining_mass_bound", "count"});
  TailConfig t;
  if (j.contains("start")) t.start = number(j["start"], join(path, "start"));
  if (!j.contains("location")) throw ConfigError(join(path, "location"), "missing");
  if (!j.contains("mass")) throw ConfigError(join(path, "mass"), "missing");
  t.location = text(j["location"], join(path, "location"));
  t.mass = text(j["mass"], join(path, "mass"));
  compile(t.location, join(path, "location"));
  compile(t.mass, join(path, "mass"));
  if (j.contains("remaining_mass_bound")) {
    t.remaining_mass_bound = text(j["remaining_mass_bound"], join(path, "remaining_mass_bound"));
    compile(*t.remaining_mass_bound, join(path, "remaining_mass_bound"));
  }
  if (j.contains("count")) t.count = unsigned_int(j["count"], join(path, "count"));
  return t;
}

JumpTail make_tail(const TailConfig& t) {
  expr::ExprPtr loc = expr::parse(t.location);
  expr::ExprPtr mass = expr::parse(t.mass);
  JumpTail tail;
  const double start = t.start;
  const std::optional<std::uint64_t> count = t.count;
  tail.jump = [loc, mass, start, count](std::size_t k) -> std::optional<TailJump> {
    if (count && k >= *count) return std::nullopt;
    const double h = start + static_cast<double>(k);
    return TailJump{expr::evaluate(*loc, h), expr::evaluate(*mass, h)};
  };
  if (t.remaining_mass_bound) {
    expr::ExprPtr bound = expr::parse(*t.remaining_mass_bound);
    tail.remaining_mass_bound = [bound, start, count](std::size_t k) {
      if (count && k >= *count) return 0.0;
      return expr::evaluate(*bound, start + static_cast<double>(k));
    };
  }
  return tail;
}

json tail_json(const TailConfig& t) {
  json j;
  j["start"] = t.start;
  j["location"] = expr::print(*expr::parse(t.location));
  j["mass"] = expr::print(*expr::parse(t.mass));
  if (t.remaining_mass_bound) j["remaining_mass_bound"] = expr::print(*expr::parse(*t.remaining_mass_bound));
  if (t.count) j["count"] = *t.count;
  return j;
}

// Jump locations the integrand has to be inspected at on the real line.
std::vector<double> inspection_points(const Distribution& F, const Config& c) {
  std::vector<double> pts;
  double reach = 0.0;
  for (double T : default_window_schedule()) reach = std::max(reach, T);
  reach += 1.0;
  const std::size_t cap = std::size_t{1} << 22;
  if (const auto* s = std::get_if<StepDF>(&F)) {
    try {
      for (const JumpPoint& j : s->jumps_in(-reach, reach, cap)) pts.push_back(j.location);
    } catch (const Error&) {
      // Accumulating or huge families: keep the materialized jumps only.
      pts.clear();
      for (const JumpPoint& j : s->jumps()) pts.push_back(j.location);
    }
  } else {
    for (const JumpPoint& j : std::get<MixedDF>(F).jumps()) pts.push_back(j.location);
  }
  expr::ExprPtr e = expr::parse(c.integrand);
  for (const SegmentConfig& seg : c.segments) {
    for (double x : expr::breakpoint_candidates(*e, seg.from, seg.to)) pts.push_back(x);
  }
  return pts;
}

}  // namespace

Config parse_config(const json& doc) {
  if (!doc.is_object() || doc.empty()) throw ConfigError("", "expected a non-empty JSON object");
  only_keys(doc, "", {"distribution", "integrand", "interval", "options"});
  Config c;

  if (!doc.contains("distribution")) throw ConfigError("distribution", "missing");
  const json& d = doc["distribution"];
  only_keys(d, "distribution", {"base", "signed", "jumps", "segments", "right_tail", "left_tail"});
  if (d.contains("base")) c.base = number(d["base"], "distribution.base");
  if (d.contains("signed")) {
    if (!d["signed"].is_boolean()) throw ConfigError("distribution.signed", "expected true or false");
    c.signed_masses = d["signed"].get<bool>();
  }
  if (d.contains("jumps")) {
    const json& js = d["jumps"];
    if (!js.is_array()) throw ConfigError("distribution.jumps", "expected an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
      const std::string p = index("distribution.jumps", i);
      only_keys(js[i], p, {"x", "mass", "value_at"});
      if (!js[i].contains("x")) throw ConfigError(join(p, "x"), "missing");
      if (!js[i].contains("mass")) throw ConfigError(join(p, "mass"), "missing");
      JumpConfig jc;
      jc.x = number(js[i]["x"], join(p, "x"));
      jc.mass = number(js[i]["mass"], join(p, "mass"));
      if (jc.mass == 0.0) throw ConfigError(join(p, "mass"), "a jump needs a nonzero mass");
      if (js[i].contains("value_at") && !js[i]["value_at"].is_null()) {
        jc.value_at = number(js[i]["value_at"], join(p, "value_at"));
      }
      c.jumps.push_back(jc);
    }
  }
  if (d.contains("segments")) {
    const json& ss = d["segments"];
    if (!ss.is_array()) throw ConfigError("distribution.segments", "expected an array");
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const std::string p = index("distribution.segments", i);
      only_keys(ss[i], p, {"from", "to", "expr"});
      for (const char* k : {"from", "to", "expr"}) {
        if (!ss[i].contains(k)) throw ConfigError(join(p, k), "missing");
      }
      SegmentConfig sc;
      sc.from = number(ss[i]["from"], join(p, "from"));
      sc.to = number(ss[i]["to"], join(p, "to"));
      sc.expr = text(ss[i]["expr"], join(p, "expr"));
      if (!(sc.from < sc.to)) throw ConfigError(p, "needs from < to");
      compile(sc.expr, join(p, "expr"));
      c.segments.push_back(sc);
    }
  }
  if (d.contains("right_tail")) c.right_tail = parse_tail(d["right_tail"], "distribution.right_tail");
  if (d.contains("left_tail")) c.left_tail = parse_tail(d["left_tail"], "distribution.left_tail");
  if (!c.segments.empty() && (c.right_tail || c.left_tail)) {
    throw ConfigError("distribution.segments", "segments cannot be combined with generated tails");
  }

  if (!doc.contains("integrand")) throw ConfigError("integrand", "missing");
  c.integrand = text(doc["integrand"], "integrand");
  compile(c.integrand, "integrand");

  if (!doc.contains("interval")) throw ConfigError("interval", "missing");
  const json& iv = doc["interval"];
  if (iv.is_string()) {
    if (iv.get<std::string>() != "real-line") throw ConfigError("interval", "expected [a, b] or \"real-line\"");
  } else {
    if (!iv.is_array() || iv.size() != 2) throw ConfigError("interval", "expected [a, b] or \"real-line\"");
    double a = number(iv[0], "interval[0]");
    double b = number(iv[1], "interval[1]");
    if (!(a < b)) throw ConfigError("interval", "needs a < b");
    c.interval = std::make_pair(a, b);
  }

  if (doc.contains("options")) {
    const json& o = doc["options"];
    only_keys(o, "options", {"tol", "n_max", "policy", "seed", "truncation_tol", "quad_tol", "integrand_bound"});
    if (o.contains("tol")) c.options.tol = positive(o["tol"], "options.tol");
    if (o.contains("n_max")) {
      std::uint64_t n = unsigned_int(o["n_max"], "options.n_max");
      if (n < 1 || n > kMaxLevel) throw ConfigError("options.n_max", "expected an integer in [1, 24]");
      c.options.n_max = static_cast<int>(n);
    }
    if (o.contains("policy")) {
      c.options.policy = text(o["policy"], "options.policy");
      if (!parse_tag_kind(c.options.policy)) throw ConfigError("options.policy", "unknown tag policy");
    }
    if (o.contains("seed")) c.options.seed = unsigned_int(o["seed"], "options.seed");
    if (o.contains("truncation_tol")) c.options.truncation_tol = positive(o["truncation_tol"], "options.truncation_tol");
    if (o.contains("quad_tol")) c.options.quad_tol = positive(o["quad_tol"], "options.quad_tol");
    if (o.contains("integrand_bound") && !o["integrand_bound"].is_null()) {
      c.options.integrand_bound = number(o["integrand_bound"], "options.integrand_bound");
      if (*c.options.integrand_bound < 0.0) throw ConfigError("options.integrand_bound", "expected a bound >= 0");
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  if (content.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("", path + " is empty");
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json normalized(const Config& c) {
  json d;
  d["base"] = c.base;
  d["signed"] = c.signed_masses;
  d["jumps"] = json::array();
  for (const JumpConfig& j : c.jumps) {
    json o{{"x", j.x}, {"mass", j.mass}};
    if (j.value_at) o["value_at"] = *j.value_at;
    d["jumps"].push_back(o);
  }
  d["segments"] = json::array();
  for (const SegmentConfig& s : c.segments) {
    d["segments"].push_back({{"from", s.from}, {"to", s.to}, {"expr", expr::print(*expr::parse(s.expr))}});
  }
  if (c.right_tail) d["right_tail"] = tail_json(*c.right_tail);
  if (c.left_tail) d["left_tail"] = tail_json(*c.left_tail);

  json doc;
  doc["distribution"] = d;
  doc["integrand"] = expr::print(*expr::parse(c.integrand));
  if (c.interval) doc["interval"] = json::array({c.interval->first, c.interval->second});
  else doc["interval"] = "real-line";
  json o;
  o["tol"] = c.options.tol;
  o["n_max"] = c.options.n_max;
  o["policy"] = std::string(to_string(*parse_tag_kind(c.options.policy)));
  o["seed"] = c.options.seed;
  o["truncation_tol"] = c.options.truncation_tol;
  o["quad_tol"] = c.options.quad_tol;
  if (c.options.integrand_bound) o["integrand_bound"] = *c.options.integrand_bound;
  doc["options"] = o;
  return doc;
}

Problem build_problem(const Config& c) {
  const Domain domain = c.interval ? Domain::interval(c.interval->first, c.interval->second) : Domain::whole_line();
  std::vector<JumpSpec> specs;
  for (const JumpConfig& j : c.jumps) specs.push_back({j.x, j.mass, j.value_at});

  std::optional<Distribution> F;
  try {
    if (c.segments.empty()) {
      std::optional<JumpTail> right;
      std::optional<JumpTail> left;
      if (c.right_tail) right = make_tail(*c.right_tail);
      if (c.left_tail) left = make_tail(*c.left_tail);
      F.emplace(StepDF(domain, c.base, specs, c.signed_masses, right, left));
    } else {
      // Gap g runs from jump g - 1 (or the domain start) to jump g (or the domain end).
      std::vector<std::optional<SegmentFn>> segs(specs.size() + 1);
      std::vector<bool> used(c.segments.size(), false);
      for (std::size_t g = 0; g <= specs.size(); ++g) {
        const double lo = g == 0 ? domain.lo() : specs[g - 1].location;
        const double hi = g == specs.size() ? domain.hi() : specs[g].location;
        for (std::size_t i = 0; i < c.segments.size(); ++i) {
          if (c.segments[i].from == lo && c.segments[i].to == hi) {
            if (used[i] || segs[g]) throw ConfigError(index("distribution.segments", i), "gap given twice");
            expr::ExprPtr e = expr::parse(c.segments[i].expr);
            segs[g] = [e](double x) { return expr::evaluate(*e, x); };
            used[i] = true;
          }
        }
      }
      for (std::size_t i = 0; i < used.size(); ++i) {
        if (!used[i]) {
          throw ConfigError(index("distribution.segments", i),
                            "from/to must be consecutive breakpoints (jumps or interval ends)");
        }
      }
      F.emplace(MixedDF(domain, c.base, specs, segs, c.signed_masses));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("distribution", e.what());
  }

  expr::ExprPtr e = expr::parse(c.integrand);
  std::optional<Integrand> f;
  if (c.interval) {
    f.emplace(expr::to_integrand(e, c.interval->first, c.interval->second, c.options.integrand_bound));
  } else {
    f.emplace(expr::to_integrand_at(e, inspection_points(*F, c), c.options.integrand_bound));
  }

  TagPolicy policy{*parse_tag_kind(c.options.policy), c.options.seed};
  return Problem{std::move(*F), std::move(*f), e, c.interval, c.options, policy};
}

}  // namespace stieltjes::cli
