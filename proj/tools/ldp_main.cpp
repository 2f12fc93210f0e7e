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
//
// Command-line front end:
//   verify            audit a channel against a privacy budget
//   factorize         split a channel into extremal stage + post-randomization
//   fisher-max        maximal Fisher information of a finite model (LP + closed form)
//   bounds            continuous-case information bounds per alpha (CSV)
//   simulate-uniform  Monte Carlo study of the uniform-law estimator (CSV/JSON)
//
// Exit codes: 0 success, 2 validation error, 1 numeric failure.

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldp/channel.hpp"
#include "ldp/continuous.hpp"
#include "ldp/factorize.hpp"
#include "ldp/finite_fisher.hpp"
#include "ldp/serialization.hpp"
#include "ldp/uniform_sim.hpp"

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int RunVerify(const std::string& channel_path, double alpha,
              const std::string& out_path) {
  const ldp::Channel channel = ldp::ChannelFromJson(ReadFile(channel_path));
  const ldp::LdpCertificate cert = ldp::VerifyLdp(channel, alpha);
  Emit(ldp::CertificateToJson(cert, alpha), out_path);
  return 0;
}

int RunFactorize(const std::string& channel_path, double alpha,
                 const std::string& mode_name, const std::string& out_path) {
  const ldp::Channel channel = ldp::ChannelFromJson(ReadFile(channel_path));
  const ldp::DecomposeMode mode = mode_name == "product"
                                      ? ldp::DecomposeMode::kProduct
                                      : ldp::DecomposeMode::kSparse;
  const ldp::ExtremalFactorization fact =
      ldp::Factorize(channel, alpha, mode);
  const ldp::FactorizationChecks checks = ldp::ComputeChecks(channel, fact);
  Emit(ldp::FactorizationToJson(fact, checks), out_path);
  return 0;
}

int RunFisherMax(const std::string& model_path, double alpha_flag,
                 bool alpha_given, const std::string& out_path) {
  const ldp::FiniteModelSpec spec = ldp::FiniteModelFromJson(ReadFile(model_path));
  double alpha = 0.0;
  if (alpha_given) {
    alpha = alpha_flag;
  } else if (spec.alpha) {
    alpha = *spec.alpha;
  } else {
    throw std::invalid_argument("alpha missing: pass --alpha or put it in the model file");
  }
  const ldp::MaxInfoResult lp = ldp::SolveLp(spec.model, alpha);
  double gap = std::numeric_limits<double>::quiet_NaN();
  if (spec.model.ScoreNowhereZero()) {
    gap = std::abs(lp.i_max - ldp::ClosedFormMax(spec.model, alpha).i_max);
  }
  Emit(ldp::MaxInfoToJson(lp, gap), out_path);
  return 0;
}

int RunBounds(const std::string& model_name, const std::string& spec_path,
              std::vector<double> alphas, double theta0, double quad_tol,
              const std::string& out_path) {
  if (alphas.empty()) throw std::invalid_argument("bounds needs at least one --alpha");
  std::ostringstream csv;
  csv << "alpha,lower,upper,two_point_info,ratio_to_limit\n";

  if (model_name == "uniform") {
    // The uniform law is not regular; the bounds come from its dedicated
    // analysis: upper = (e^a-1)^2/theta0^2 and the achieved two-point value
    // (e^a-1)^2/(theta0^2 e^a) serves as the lower bound.
    for (double a : alphas) {
      const double ea = std::exp(a);
      const double upper = (ea - 1.0) * (ea - 1.0) / (theta0 * theta0);
      const double two_point = upper / ea;
      csv << Fmt(a) << ',' << Fmt(two_point) << ',' << Fmt(upper) << ','
          << Fmt(two_point) << ',';
      if (a > 0.0) csv << Fmt(two_point / (a * a / (theta0 * theta0)));
      csv << '\n';
    }
    Emit(csv.str(), out_path);
    return 0;
  }

  ldp::QuadratureOptions quad;
  quad.abs_tol = quad_tol;
  std::optional<ldp::ContinuousModel> model;
  if (model_name == "gaussian") {
    model = ldp::ContinuousModel::Gaussian(quad);
  } else if (model_name == "custom-piecewise") {
    if (spec_path.empty()) {
      throw std::invalid_argument("custom-piecewise needs --spec file");
    }
    const nlohmann::json j = nlohmann::json::parse(ReadFile(spec_path));
    model = ldp::ContinuousModel::PiecewiseLinear(
        j.at("knots").get<std::vector<double>>(),
        j.at("density").get<std::vector<double>>(),
        j.at("score").get<std::vector<double>>(), quad);
  } else {
    throw std::invalid_argument("unknown model '" + model_name +
                                "' (gaussian | uniform | custom-piecewise)");
  }

  const double mean_abs = model->MeanAbsScore();
  for (double a : alphas) {
    const auto [lower, upper] = ldp::InfoBounds(*model, a);
    const double two_point =
        ldp::FisherInfoExtremal(*model, ldp::TwoPointMechanism(*model, a));
    csv << Fmt(a) << ',' << Fmt(lower) << ',' << Fmt(upper) << ','
        << Fmt(two_point) << ',';
    if (a > 0.0) {
      csv << Fmt(two_point / (a * a * mean_abs * mean_abs / 4.0));
    }
    csv << '\n';
  }
  Emit(csv.str(), out_path);
  return 0;
}

int RunSimulateUniform(const ldp::SimConfig& config,
                       const std::string& out_path,
                       const std::string& json_path) {
  const ldp::UniformSimReport report = ldp::RunSimulation(config);
  std::ostringstream csv;
  ldp::ReportToCsv(report, csv);
  Emit(csv.str(), out_path);
  if (!json_path.empty()) Emit(ldp::ReportToJson(report), json_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"staircase mechanisms, Fisher information and estimation under local differential privacy"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::string channel_path, model_path, spec_path, out_path, json_path;
  std::string mode_name = "sparse";
  std::string bounds_model = "gaussian";
  double alpha = 0.0;
  double quad_tol = 1e-10;
  std::vector<double> alphas;
  ldp::SimConfig sim;

  auto* verify = app.add_subcommand("verify", "Audit a channel JSON against a privacy budget");
  verify->add_option("--channel", channel_path, "Channel JSON file {d, l, kernel}")
      ->required()->check(CLI::ExistingFile);
  verify->add_option("--alpha", alpha, "Privacy budget alpha")->required();
  verify->add_option("--out", out_path, "Output path (default stdout)");

  auto* factorize = app.add_subcommand("factorize", "Factor a channel through an extremal mechanism");
  factorize->add_option("--channel", channel_path, "Channel JSON file {d, l, kernel}")
      ->required()->check(CLI::ExistingFile);
  factorize->add_option("--alpha", alpha, "Privacy budget alpha")->required();
  factorize->add_option("--mode", mode_name, "Vertex decomposition: sparse (<= d+1 atoms) or product")
      ->check(CLI::IsMember({"sparse", "product"}));
  factorize->add_option("--out", out_path, "Output path (default stdout)");

  auto* fisher = app.add_subcommand("fisher-max", "Maximal Fisher information of a finite model");
  fisher->add_option("--model", model_path, "Model JSON file {p0, score, alpha?}")
      ->required()->check(CLI::ExistingFile);
  auto* fisher_alpha = fisher->add_option("--alpha", alpha, "Privacy budget (overrides the model file)");
  fisher->add_option("--out", out_path, "Output path (default stdout)");

  auto* bounds = app.add_subcommand("bounds", "Continuous-case Fisher information bounds (CSV)");
  bounds->add_option("--model", bounds_model, "gaussian | uniform | custom-piecewise");
  bounds->add_option("--spec", spec_path, "Piecewise model JSON {knots, density, score}")
      ->check(CLI::ExistingFile);
  bounds->add_option("--alpha", alphas, "Privacy budget; repeat for a list")->required();
  bounds->add_option("--theta0", sim.theta0, "True parameter for the uniform model");
  bounds->add_option("--quad-tol", quad_tol, "Quadrature absolute tolerance");
  bounds->add_option("--out", out_path, "Output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate-uniform", "Monte Carlo study of the uniform-law estimator");
  simulate->add_option("--theta0", sim.theta0, "True parameter theta0");
  simulate->add_option("--n", sim.n, "Sample size per replication");
  simulate->add_option("--alpha", sim.alpha, "Privacy budget alpha");
  simulate->add_option("--grid-start", sim.grid_start, "First preliminary estimate");
  simulate->add_option("--grid-end", sim.grid_end, "Last preliminary estimate");
  simulate->add_option("--grid-step", sim.grid_step, "Grid step");
  simulate->add_option("--iters", sim.iterations, "Monte Carlo replications per grid point");
  simulate->add_option("--seed", sim.seed, "Master seed; replication (g, r) uses stream (seed, g, r)");
  simulate->add_option("--workers", sim.workers, "Worker threads (0 = hardware)");
  simulate->add_flag("--two-stage", sim.two_stage,
                     "Re-estimate theta_p per replication from an independent preliminary sample");
  simulate->add_option("--preliminary-fraction", sim.preliminary_fraction,
                       "Preliminary sample size as a fraction of n (two-stage mode)");
  simulate->add_option("--out", out_path, "CSV output path (default stdout)");
  simulate->add_option("--json", json_path, "Also write the full report as JSON");

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return RunVerify(channel_path, alpha, out_path);
    if (factorize->parsed()) return RunFactorize(channel_path, alpha, mode_name, out_path);
    if (fisher->parsed()) {
      return RunFisherMax(model_path, alpha, fisher_alpha->count() > 0, out_path);
    }
    if (bounds->parsed()) {
      return RunBounds(bounds_model, spec_path, alphas, sim.theta0, quad_tol, out_path);
    }
    if (simulate->parsed()) return RunSimulateUniform(sim, out_path, json_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
