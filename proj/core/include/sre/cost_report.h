// sre/cost_report.h

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

// Serialization of cost reports: a JSON document with stable field names and
// a flat TSV with one row per (cell, operating point).

#ifndef SRE_COST_REPORT_H_
#define SRE_COST_REPORT_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "sre/det.h"
#include "sre/metrics.h"

namespace sre {

inline constexpr int kCostReportVersion = 1;

inline constexpr std::string_view kCostTsvHeader =
    "cell\tn_target\tn_nontarget\tc_miss\tc_fa\tp_target\tbeta\tthreshold\t"
    "p_miss\tp_fa\tc_norm";

std::string to_json(const CostReport &report, const PartitionSchema &schema,
                    const std::optional<ConfidenceInterval> &ci = std::nullopt);

void write_cost_tsv(const CostReport &report, std::ostream &out);

/// Structural check of a cost-report JSON document; returns a description
/// of the first problem or an empty string.
std::string check_cost_report_json(const std::string &text);

std::string to_json(const ConfidenceInterval &ci);

}  // namespace sre

#endif  // SRE_COST_REPORT_H_
