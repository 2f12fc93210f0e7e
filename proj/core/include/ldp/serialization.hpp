// Copyright 2026 The ldp-staircase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDP_SERIALIZATION_HPP_
#define LDP_SERIALIZATION_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include "ldp/channel.hpp"
#include "ldp/factorize.hpp"
#include "ldp/finite_fisher.hpp"
#include "ldp/uniform_sim.hpp"

namespace ldp {

// JSON wire formats. All emitters produce deterministic bytes (sorted keys,
// shortest round-trip float form), so identical inputs give identical files.

// {"d": ..., "l": ..., "kernel": [[...], ...]} with a row-major kernel.
std::string ChannelToJson(const Channel& channel, int indent = 2);
Channel ChannelFromJson(const std::string& text);

struct FiniteModelSpec {
  FiniteModel model;
  std::optional<double> alpha;
};
// {"p0": [...], "score": [...], "alpha": optional}
FiniteModelSpec FiniteModelFromJson(const std::string& text);

std::string CertificateToJson(const LdpCertificate& cert, double alpha,
                              int indent = 2);

struct FactorizationChecks {
  double max_roundtrip_error = 0.0;
  double max_normalization_error = 0.0;
  double omega_mass = 0.0;
  bool q1_extremal = false;
};
FactorizationChecks ComputeChecks(const Channel& original,
                                  const ExtremalFactorization& fact);
// {"omega": {beta: w}, "q1": ..., "q2": ..., "checks": {...}}
std::string FactorizationToJson(const ExtremalFactorization& fact,
                                const FactorizationChecks& checks,
                                int indent = 2);

std::string MaxInfoToJson(const MaxInfoResult& result,
                          double lp_vs_closed_form_gap, int indent = 2);

std::string ReportToJson(const UniformSimReport& report, int indent = 2);
// Columns: theta_p, emp_mean, emp_std, theory_std, fisher_floor,
// invalid_frac. theory_std is empty where no CLT applies.
void ReportToCsv(const UniformSimReport& report, std::ostream& out);

}  // namespace ldp

#endif  // LDP_SERIALIZATION_HPP_
