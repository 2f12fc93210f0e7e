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

#include "ldp/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ldp {

namespace {

using nlohmann::json;

json ChannelToJsonObject(const Channel& channel) {
  json rows = json::array();
  for (int x = 0; x < channel.input_size(); ++x) {
    json row = json::array();
    for (int z = 0; z < channel.output_size(); ++z) row.push_back(channel.at(x, z));
    rows.push_back(std::move(row));
  }
  return json{{"d", channel.input_size()},
              {"l", channel.output_size()},
              {"kernel", std::move(rows)}};
}

Channel ChannelFromJsonObject(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("l") ||
      !j.contains("kernel")) {
    throw std::invalid_argument("channel JSON needs fields d, l, kernel");
  }
  const int d = j.at("d").get<int>();
  const int l = j.at("l").get<int>();
  const json& rows = j.at("kernel");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw std::invalid_argument("kernel must have d rows");
  }
  std::vector<double> kernel;
  kernel.reserve(static_cast<std::size_t>(d) * l);
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != l) {
      throw std::invalid_argument("kernel row must have l entries");
    }
    for (const json& v : row) kernel.push_back(v.get<double>());
  }
  return Channel(d, l, std::move(kernel));
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string ChannelToJson(const Channel& channel, int indent) {
  return ChannelToJsonObject(channel).dump(indent);
}

Channel ChannelFromJson(const std::string& text) {
  return ChannelFromJsonObject(json::parse(text));
}

FiniteModelSpec FiniteModelFromJson(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("p0") || !j.contains("score")) {
    throw std::invalid_argument("model JSON needs fields p0 and score");
  }
  FiniteModelSpec spec{
      FiniteModel(j.at("p0").get<std::vector<double>>(),
                  j.at("score").get<std::vector<double>>()),
      std::nullopt};
  if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
  return spec;
}

std::string CertificateToJson(const LdpCertificate& cert, double alpha,
                              int indent) {
  json j{{"alpha", alpha},
         {"alpha_effective", cert.alpha_effective},
         {"satisfies_ldp", cert.Satisfies(alpha)},
         {"is_extremal", cert.is_extremal}};
  if (cert.witness) {
    j["witness"] = json{{"z", cert.witness->z},
                        {"x_max", cert.witness->x_max},
                        {"x_min", cert.witness->x_min}};
  }
  if (!cert.removable_outputs.empty()) {
    j["removable_outputs"] = cert.removable_outputs;
  }
  return j.dump(indent);
}

FactorizationChecks ComputeChecks(const Channel& original,
                                  const ExtremalFactorization& fact) {
  FactorizationChecks checks;
  const Channel recomposed = Compose(fact.q1, fact.q2);
  for (int x = 0; x < original.input_size(); ++x) {
    for (int z = 0; z < original.output_size(); ++z) {
      checks.max_roundtrip_error =
          std::max(checks.max_roundtrip_error,
                   std::abs(recomposed.at(x, z) - original.at(x, z)));
    }
  }
  const double ea = std::exp(fact.alpha);
  for (int x = 0; x < original.input_size(); ++x) {
    double row = 0.0;
    for (const auto& [beta, w] : fact.omega) {
      row += w * (((beta >> x) & 1u) ? ea : 1.0);
    }
    checks.max_normalization_error =
        std::max(checks.max_normalization_error, std::abs(row - 1.0));
  }
  checks.omega_mass = fact.OmegaMass();
  checks.q1_extremal = IsExtremal(fact.q1, fact.alpha);
  return checks;
}

std::string FactorizationToJson(const ExtremalFactorization& fact,
                                const FactorizationChecks& checks,
                                int indent) {
  json omega = json::object();
  for (const auto& [beta, w] : fact.omega) omega[std::to_string(beta)] = w;
  json j{{"alpha", fact.alpha},
         {"support", fact.support},
         {"omega", std::move(omega)},
         {"q1", ChannelToJsonObject(fact.q1)},
         {"q2", ChannelToJsonObject(fact.q2)},
         {"min_mass", fact.min_mass},
         {"checks",
          json{{"max_roundtrip_error", checks.max_roundtrip_error},
               {"max_normalization_error", checks.max_normalization_error},
               {"omega_mass", checks.omega_mass},
               {"q1_extremal", checks.q1_extremal}}}};
  return j.dump(indent);
}

std::string MaxInfoToJson(const MaxInfoResult& result,
                          double lp_vs_closed_form_gap, int indent) {
  json omega = json::object();
  for (const auto& [beta, w] : result.omega) omega[std::to_string(beta)] = w;
  json j{{"M_star", result.m_star},
         {"I_max", result.i_max},
         {"support", result.support},
         {"omega", std::move(omega)},
         {"n_max", result.n_max},
         {"alpha_bar_check", result.alpha_bar_check},
         {"lp_vs_closed_form_gap", lp_vs_closed_form_gap}};
  return j.dump(indent);
}

std::string ReportToJson(const UniformSimReport& report, int indent) {
  const SimConfig& c = report.config;
  json points = json::array();
  for (const GridPointStats& p : report.points) {
    json jp{{"theta_p", p.theta_p},
            {"emp_mean", p.emp_mean},
            {"emp_std", p.emp_std},
            {"fisher_floor", p.fisher_floor},
            {"invalid_frac", p.invalid_frac},
            {"valid_count", p.valid_count}};
    if (std::isfinite(p.theory_std)) {
      jp["theory_std"] = p.theory_std;
    } else {
      jp["theory_std"] = nullptr;
    }
    points.push_back(std::move(jp));
  }
  json j{{"config",
          json{{"theta0", c.theta0},
               {"n", c.n},
               {"alpha", c.alpha},
               {"grid_start", c.grid_start},
               {"grid_end", c.grid_end},
               {"grid_step", c.grid_step},
               {"iterations", c.iterations},
               {"seed", c.seed},
               {"two_stage", c.two_stage}}},
         {"points", std::move(points)}};
  return j.dump(indent);
}

void ReportToCsv(const UniformSimReport& report, std::ostream& out) {
  out << "theta_p,emp_mean,emp_std,theory_std,fisher_floor,invalid_frac\n";
  for (const GridPointStats& p : report.points) {
    out << FormatDouble(p.theta_p) << ',' << FormatDouble(p.emp_mean) << ','
        << FormatDouble(p.emp_std) << ',';
    if (std::isfinite(p.theory_std)) out << FormatDouble(p.theory_std);
    out << ',' << FormatDouble(p.fisher_floor) << ','
        << FormatDouble(p.invalid_frac) << '\n';
  }
}

}  // namespace ldp
