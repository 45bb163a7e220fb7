// core/src/cost_report.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sre/cost_report.h"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "sre/text_io.h"

namespace sre {

namespace {

using nlohmann::ordered_json;

// JSON has no infinities; sweep sentinels are written as strings.
ordered_json number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

ordered_json point_json(const OperatingPoint &op) {
  return {{"c_miss", op.c_miss()},
          {"c_fa", op.c_fa()},
          {"p_target", op.p_target()},
          {"beta", op.beta()},
          {"threshold", op.threshold()}};
}

ordered_json coordinates_json(const CellKey &key) {
  ordered_json j = ordered_json::object();
  for (const auto &[name, value] : key.coordinates()) j[name] = value;
  return j;
}

ordered_json ci_json(const ConfidenceInterval &ci) {
  return {{"metric", to_string(ci.metric)},
          {"resample_unit", to_string(ci.unit)},
          {"level", ci.level},
          {"point_estimate", ci.point_estimate},
          {"lower", ci.lower},
          {"upper", ci.upper},
          {"n_replicates", ci.n_replicates},
          {"n_discarded", ci.n_discarded},
          {"seed", ci.seed},
          {"quantile_rule", "nearest-rank"}};
}

}  // namespace

std::string to_json(const ConfidenceInterval &ci) { return ci_json(ci).dump(2); }

std::string to_json(const CostReport &report, const PartitionSchema &schema,
                    const std::optional<ConfidenceInterval> &ci) {
  ordered_json j;
  j["format"] = "sre-cost-report";
  j["version"] = kCostReportVersion;
  ordered_json dims = ordered_json::array();
  for (Dimension d : schema.dimensions) dims.push_back(to_string(d));
  ordered_json excl = ordered_json::array();
  for (const Exclusion &e : schema.exclusions) excl.push_back(e.name);
  j["schema"] = {{"track", to_string(schema.track)},
                 {"dimensions", dims},
                 {"exclusions", excl}};
  j["actual_c_primary"] = report.actual_c_primary;
  j["min_c_primary"] = report.min_c_primary;

  ordered_json points = ordered_json::array();
  for (const PointCost &pc : report.per_point) {
    ordered_json p = point_json(pc.point);
    p["actual_c_norm"] = pc.actual_c_norm;
    p["p_miss"] = pc.p_miss;
    p["p_fa"] = pc.p_fa;
    p["min_c_norm"] = pc.min_c_norm;
    p["min_threshold"] = number(pc.min_threshold);
    p["min_p_miss"] = pc.min_p_miss;
    p["min_p_fa"] = pc.min_p_fa;
    points.push_back(std::move(p));
  }
  j["operating_points"] = std::move(points);

  ordered_json cells = ordered_json::array();
  for (const CellCost &cc : report.per_cell) {
    ordered_json c;
    c["cell"] = cc.key.label();
    c["coordinates"] = coordinates_json(cc.key);
    c["n_target"] = cc.n_target;
    c["n_nontarget"] = cc.n_nontarget;
    c["actual_c_primary"] = cc.actual_c_primary;
    ordered_json per = ordered_json::array();
    for (std::size_t k = 0; k < report.points.size(); ++k)
      per.push_back({{"p_target", report.points[k].p_target()},
                     {"p_miss", cc.p_miss[k]},
                     {"p_fa", cc.p_fa[k]},
                     {"c_norm", cc.c_norm[k]}});
    c["per_point"] = std::move(per);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  ordered_json skipped = ordered_json::array();
  for (const SkippedCell &s : report.skipped)
    skipped.push_back({{"cell", s.key.label()},
                       {"n_target", s.n_target},
                       {"n_nontarget", s.n_nontarget},
                       {"reason", s.reason}});
  j["skipped_cells"] = std::move(skipped);
  j["excluded_trials"] = report.num_excluded;
  if (ci) j["confidence_interval"] = ci_json(*ci);
  return j.dump(2) + "\n";
}

void write_cost_tsv(const CostReport &report, std::ostream &out) {
  out << kCostTsvHeader << '\n';
  for (const CellCost &cc : report.per_cell) {
    for (std::size_t k = 0; k < report.points.size(); ++k) {
      const OperatingPoint &op = report.points[k];
      out << cc.key.label() << '\t' << cc.n_target << '\t' << cc.n_nontarget
          << '\t' << format_double(op.c_miss()) << '\t'
          << format_double(op.c_fa()) << '\t' << format_double(op.p_target())
          << '\t' << format_double(op.beta()) << '\t'
          << format_double(op.threshold()) << '\t' << format_double(cc.p_miss[k])
          << '\t' << format_double(cc.p_fa[k]) << '\t'
          << format_double(cc.c_norm[k]) << '\n';
    }
  }
}

std::string check_cost_report_json(const std::string &text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception &e) {
    return std::string("not JSON: ") + e.what();
  }
  auto need = [](const ordered_json &o, const char *name,
                 bool (ordered_json::*is)() const noexcept) -> std::string {
    if (!o.is_object() || !o.contains(name)) return std::string("missing ") + name;
    if (!(o.at(name).*is)()) return std::string("wrong type for ") + name;
    return "";
  };
  for (auto [name, is] :
       {std::pair{"format", &ordered_json::is_string},
        std::pair{"version", &ordered_json::is_number_integer},
        std::pair{"schema", &ordered_json::is_object},
        std::pair{"actual_c_primary", &ordered_json::is_number},
        std::pair{"min_c_primary", &ordered_json::is_number},
        std::pair{"operating_points", &ordered_json::is_array},
        std::pair{"cells", &ordered_json::is_array},
        std::pair{"skipped_cells", &ordered_json::is_array}}) {
    if (auto err = need(j, name, is); !err.empty()) return err;
  }
  if (j["format"] != "sre-cost-report") return "unexpected format tag";
  if (j["min_c_primary"].get<double>() > j["actual_c_primary"].get<double>())
    return "min_c_primary exceeds actual_c_primary";
  for (const auto &p : j["operating_points"])
    for (const char *f : {"beta", "threshold", "actual_c_norm", "min_c_norm",
                          "p_miss", "p_fa"})
      if (!p.contains(f) || !p[f].is_number())
        return std::string("operating point lacks ") + f;
  for (const auto &c : j["cells"])
    for (const char *f : {"cell", "coordinates", "n_target", "n_nontarget",
                          "actual_c_primary", "per_point"})
      if (!c.contains(f)) return std::string("cell lacks ") + f;
  if (j.contains("confidence_interval")) {
    const auto &ci = j["confidence_interval"];
    for (const char *f : {"lower", "upper", "point_estimate", "level"})
      if (!ci.contains(f) || !ci[f].is_number())
        return std::string("confidence interval lacks ") + f;
    if (ci["lower"].get<double>() > ci["upper"].get<double>())
      return "confidence interval lower > upper";
  }
  return "";
}

}  // namespace sre
