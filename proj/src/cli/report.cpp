#include "stieltjes/cli/report.hpp"

#include <cmath>
#include <sstream>

namespace stieltjes::cli {

using nlohmann::json;

json to_json(const ExtendedReal& v) {
  if (v.is_finite()) return v.value();
  return v.to_string();
}

json to_json(const ConvergenceTrace& t) {
  json rows = json::array();
  for (const TraceRow& r : t.rows) rows.push_back({{"n", r.n}, {"cells", r.cells}, {"mesh", r.mesh}, {"sum", r.sum}});
  json j{{"verdict", std::string(to_string(t.verdict))}, {"limit", t.limit}, {"rows", rows}};
  if (std::isfinite(t.achieved_tol)) j["achieved_tol"] = t.achieved_tol;
  else j["achieved_tol"] = nullptr;
  return j;
}

json to_json(const WitnessReport& w) {
  json entries = json::array();
  for (const WitnessEntry& e : w.entries) {
    entries.push_back({{"case", std::string(to_string(e.placement))},
                       {"recipe", e.recipe},
                       {"predicted", e.predicted},
                       {"reproduced", e.reproduced},
                       {"trace", to_json(e.trace)}});
  }
  return {{"jump_location", w.jump_location},
          {"F", {{"left", w.F_left}, {"value", w.F_value}, {"right", w.F_right}}},
          {"f", {{"left", w.f_left}, {"value", w.f_value}, {"right", w.f_right}, {"estimated", w.f_limits_estimated}}},
          {"tol", w.tol},
          {"jump_on_grid_limits", w.on_grid_limits},
          {"jump_inside_cell_limits", w.inside_cell_limits},
          {"limit_set", w.limit_set},
          {"realized_set", w.realized_set},
          {"degenerate", w.degenerate},
          {"all_reproduced", w.all_reproduced()},
          {"entries", entries}};
}

json to_json(const IntegralResult& r) {
  json j{{"status", std::string(to_string(r.status))}};
  j["value"] = r.value ? to_json(*r.value) : json(nullptr);
  j["terms"] = r.diagnostics.terms;
  j["estimated"] = r.diagnostics.estimated;
  j["notes"] = r.diagnostics.notes;
  if (!r.diagnostics.sequence.empty()) j["sequence"] = r.diagnostics.sequence;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

json to_json(const ComparisonReport& c) {
  json j;
  j["ls"] = c.ls ? to_json(*c.ls) : json{{"error", c.ls_error}};
  j["rs"] = c.rs ? to_json(*c.rs) : json{{"error", c.rs_error}};
  j["verdict"] = std::string(to_string(c.verdict));
  j["max_abs_difference"] = c.max_abs_difference ? json(*c.max_abs_difference) : json(nullptr);
  return j;
}

void write_trace_csv(const ConvergenceTrace& t, std::ostream& out) {
  out << "n,cells,mesh,sum\n";
  for (const TraceRow& r : t.rows) {
    out << r.n << ',' << r.cells << ',' << format_double(r.mesh) << ',' << format_double(r.sum) << '\n';
  }
}

namespace {

std::string scalar(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string set_text(const json& arr) {
  std::string s = "{";
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? ", " : "") + scalar(arr[i]);
  return s + "}";
}

void result_text(std::ostringstream& o, const std::string& label, const json& r) {
  if (r.contains("error")) {
    o << label << ": error: " << r["error"].get<std::string>() << '\n';
    return;
  }
  o << label << ": " << r["status"].get<std::string>();
  if (!r["value"].is_null()) o << " " << scalar(r["value"]);
  if (r["estimated"].get<bool>()) o << " (estimated)";
  o << '\n';
  for (const auto& n : r["notes"]) o << "  note: " << n.get<std::string>() << '\n';
  if (r.contains("witness")) {
    const json& w = r["witness"];
    o << "  witness at x = " << scalar(w["jump_location"]) << ": limits " << set_text(w["limit_set"]) << '\n';
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream o;
  if (doc.contains("results")) {
    for (const auto& [k, v] : doc["results"].items()) result_text(o, k, v);
    if (doc.contains("comparison")) {
      o << "comparison: " << doc["comparison"]["verdict"].get<std::string>();
      if (!doc["comparison"]["max_abs_difference"].is_null()) {
        o << " (|ls - rs| = " << scalar(doc["comparison"]["max_abs_difference"]) << ")";
      }
      o << '\n';
    }
  } else if (doc.contains("witness")) {
    const json& w = doc["witness"];
    o << "jump at x = " << scalar(w["jump_location"]) << '\n';
    o << "  jump on grid:     " << set_text(w["jump_on_grid_limits"]) << '\n';
    o << "  jump inside cell: " << set_text(w["jump_inside_cell_limits"]) << '\n';
    o << "  realized:         " << set_text(w["realized_set"]) << '\n';
    for (const auto& e : w["entries"]) {
      o << "  " << e["case"].get<std::string>() << " | " << e["recipe"].get<std::string>() << " -> "
        << scalar(e["trace"]["limit"]) << " (predicted " << scalar(e["predicted"]) << ", "
        << (e["reproduced"].get<bool>() ? "reproduced" : "NOT reproduced") << ")\n";
    }
  } else if (doc.contains("verdict")) {
    result_text(o, "ls", doc["ls"]);
    result_text(o, "rs", doc["rs"]);
    o << "verdict: " << doc["verdict"].get<std::string>() << '\n';
  }
  return o.str();
}

}  // namespace stieltjes::cli
