#include "stieltjes/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "stieltjes/cli/config.hpp"
#include "stieltjes/cli/report.hpp"
#include "stieltjes/improper.hpp"
#include "stieltjes/lebesgue_stieltjes.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::string dump;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "Problem description (JSON)")->required();
  cmd->add_option("--dump-normalized", c.dump, "Write the config with every default filled in to this path");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

bool determinate(const IntegralResult& r) {
  return r.status != IntegralResult::Status::undefined_indeterminate &&
         r.status != IntegralResult::Status::rs_divergent;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << content;
}

Config load(const Common& c) {
  Config cfg = load_config(c.config);
  if (!c.dump.empty()) write_file(c.dump, normalized(cfg).dump(2) + "\n");
  return cfg;
}

void emit(const json& doc, const Common& c, const std::string& out_path, std::ostream& out) {
  const std::string body = c.format == "text" ? render_text(doc) : doc.dump(2) + "\n";
  if (out_path.empty()) out << body;
  else write_file(out_path, body);
}

json interval_json(const Problem& p) {
  if (p.interval) return json::array({p.interval->first, p.interval->second});
  return "real-line";
}

const std::pair<double, double>& need_interval(const Problem& p, const char* command) {
  if (!p.interval) throw InvalidArgument(std::string(command) + " needs a bounded interval in the config");
  return *p.interval;
}

IntegralResult rs_result(const Problem& p, double tol) {
  try {
    if (p.interval) {
      return rs_integral_closed_form(p.f, p.F, p.interval->first, p.interval->second, p.options.quad_tol);
    }
    ImproperOptions io;
    io.quad_tol = p.options.quad_tol;
    return improper_rs(p.f, p.F, tol, io);
  } catch (const NotIntegrableError& e) {
    return IntegralResult::rs_divergent(e.witness());
  }
}

int cmd_integrate(const Common& c, const std::string& method, std::optional<double> tol_flag,
                  const std::string& out_path, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Problem p = build_problem(load(c));
  const double tol = tol_flag.value_or(p.options.tol);
  LsOptions lo;
  lo.truncation_tol = p.options.truncation_tol;

  json doc;
  doc["command"] = "integrate";
  doc["method"] = method;
  doc["interval"] = interval_json(p);
  doc["tolerances"] = {{"tol", tol}, {"quad_tol", p.options.quad_tol}, {"truncation_tol", p.options.truncation_tol}};
  int code = kExitOk;

  if (method == "ls") {
    IntegralResult r = ls_integral(p.f, p.F, lo, p.options.quad_tol);
    doc["results"]["ls"] = to_json(r);
    if (!determinate(r)) code = kExitIndeterminate;
  } else if (method == "rs") {
    IntegralResult r = rs_result(p, tol);
    doc["results"]["rs"] = to_json(r);
    if (!determinate(r)) code = kExitIndeterminate;
  } else {
    ImproperOptions io;
    io.quad_tol = p.options.quad_tol;
    ComparisonReport rep = compare_ls_rs(p.f, p.F, tol, lo, io);
    json cmp = to_json(rep);
    doc["results"]["ls"] = cmp["ls"];
    doc["results"]["rs"] = cmp["rs"];
    doc["comparison"] = {{"verdict", cmp["verdict"]}, {"max_abs_difference", cmp["max_abs_difference"]}};
    bool ok = rep.ls && rep.rs && determinate(*rep.ls) && determinate(*rep.rs) &&
              rep.verdict == ComparisonReport::Verdict::agree;
    if (!ok) code = kExitIndeterminate;
  }
  doc["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(doc, c, out_path, out);
  return code;
}

int cmd_trace(const Common& c, const std::string& policy_flag, std::optional<int> n_max_flag,
              const std::string& csv_path, std::ostream& out) {
  Problem p = build_problem(load(c));
  auto [a, b] = need_interval(p, "trace");
  TagPolicy policy = p.policy;
  if (!policy_flag.empty()) {
    auto k = parse_tag_kind(policy_flag);
    if (!k) throw InvalidArgument("unknown tag policy '" + policy_flag + "'");
    policy.kind = *k;
  }
  const int n_max = n_max_flag.value_or(p.options.n_max);
  if (n_max < 1 || n_max > kMaxLevel) throw InvalidArgument("--n-max must lie in [1, 24]");
  ConvergeOptions co;
  co.stop_early = false;
  ConvergenceTrace t = rs_converge(p.f, p.F, a, b, policy, p.options.tol, n_max, co);
  if (csv_path.empty()) {
    write_trace_csv(t, out);
  } else {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + csv_path);
    write_trace_csv(t, f);
    json doc{{"command", "trace"}, {"policy", std::string(to_string(policy.kind))}, {"csv", csv_path},
             {"trace", to_json(t)}};
    emit(doc, c, "", out);
  }
  return kExitOk;
}

int cmd_witness(const Common& c, double jump, std::optional<double> tol_flag, std::ostream& out) {
  Problem p = build_problem(load(c));
  auto [a, b] = need_interval(p, "witness");
  const double tol = tol_flag.value_or(p.options.tol);
  WitnessReport w = divergence_witness(p.f, p.F, jump, a, b, tol, std::max(p.options.n_max, 3));
  json doc{{"command", "witness"}, {"interval", interval_json(p)}, {"witness", to_json(w)}};
  emit(doc, c, "", out);
  return w.all_reproduced() && !w.degenerate ? kExitOk : kExitIndeterminate;
}

int cmd_compare(const Common& c, std::optional<double> tol_flag, std::ostream& out) {
  Problem p = build_problem(load(c));
  const double tol = tol_flag.value_or(p.options.tol);
  LsOptions lo;
  lo.truncation_tol = p.options.truncation_tol;
  ImproperOptions io;
  io.quad_tol = p.options.quad_tol;
  ComparisonReport rep = compare_ls_rs(p.f, p.F, tol, lo, io);
  json doc = to_json(rep);
  doc["command"] = "compare";
  doc["interval"] = interval_json(p);
  doc["tol"] = tol;
  emit(doc, c, "", out);
  return rep.verdict == ComparisonReport::Verdict::agree ? kExitOk : kExitIndeterminate;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stieltjes integrals against distribution functions with jumps", "stieltjes"};
  app.require_subcommand(1);

  Common common;
  std::string method = "both";
  std::string out_path;
  std::string policy;
  std::string csv_path;
  double tol = 0.0;
  int n_max = 0;
  double jump = 0.0;

  CLI::App* integrate = app.add_subcommand("integrate", "Compute the integral by LS, RS, or both");
  add_common(integrate, common);
  integrate->add_option("--method", method, "ls, rs or both")->check(CLI::IsMember({"ls", "rs", "both"}));
  CLI::Option* integrate_tol = integrate->add_option("--tol", tol, "Agreement / convergence tolerance");
  integrate->add_option("--out", out_path, "Write the result document here instead of stdout");

  CLI::App* trace = app.add_subcommand("trace", "Export RS sums along dyadic refinement as CSV");
  add_common(trace, common);
  trace->add_option("--policy", policy, "Tag policy (left, right, midpoint, random_uniform, at_jump, ...)");
  CLI::Option* trace_n = trace->add_option("--n-max", n_max, "Finest level (2^n cells)");
  trace->add_option("--csv", csv_path, "Write the CSV here instead of stdout");

  CLI::App* witness = app.add_subcommand("witness", "Realize the limits of RS sums at a shared jump");
  add_common(witness, common);
  witness->add_option("--jump", jump, "Jump location")->required();
  CLI::Option* witness_tol = witness->add_option("--tol", tol, "Reproduction tolerance");

  CLI::App* compare = app.add_subcommand("compare", "Compare the LS and RS integrals");
  add_common(compare, common);
  CLI::Option* compare_tol = compare->add_option("--tol", tol, "Agreement tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  auto opt_tol = [&](CLI::Option* o) { return o->count() ? std::optional<double>(tol) : std::nullopt; };
  try {
    if (integrate->parsed()) return cmd_integrate(common, method, opt_tol(integrate_tol), out_path, out);
    if (trace->parsed()) {
      return cmd_trace(common, policy, trace_n->count() ? std::optional<int>(n_max) : std::nullopt, csv_path, out);
    }
    if (witness->parsed()) return cmd_witness(common, jump, opt_tol(witness_tol), out);
    if (compare->parsed()) return cmd_compare(common, opt_tol(compare_tol), out);
  } catch (const NoWitnessError& e) {
    err << "no witness: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace stieltjes::cli
