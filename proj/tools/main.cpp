#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pulsetrain/config.hpp"
#include "pulsetrain/oracle.hpp"
#include "pulsetrain/tomography.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfigError = 2;
constexpr int kExitDomainError = 3;
constexpr int kExitDeviation = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pulsetrain::ConfigError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_simulate(const std::string& config_path, bool verify_flag,
                 const std::optional<std::string>& out_path) {
  pulsetrain::RunConfig config =
      pulsetrain::parse_config(read_file(config_path));
  if (verify_flag) config.verify = true;

  std::ostringstream out;
  const pulsetrain::RunResult result = pulsetrain::run(config, out);
  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + *out_path + "'");
    file << out.str();
  } else {
    std::cout << out.str();
  }
  if (result.exit_code == kExitDeviation)
    std::cerr << "verification deviation "
              << pulsetrain::format_double(result.max_abs_deviation)
              << " exceeds 1e-6\n";
  return result.exit_code;
}

pulsetrain::AmplificationModel parse_model(const json& j) {
  pulsetrain::AmplificationModel model;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "two_state") {
    model.kind = pulsetrain::SystemKind::TwoState;
    model.size = 2;
  } else if (kind == "majorana") {
    model.kind = pulsetrain::SystemKind::Majorana;
    model.size = j.at("size").get<int>();
  } else if (kind == "multipod") {
    model.kind = pulsetrain::SystemKind::Multipod;
    model.size = j.at("size").get<int>();
  } else {
    throw pulsetrain::ConfigError(
        "model.kind must be two_state, majorana or multipod");
  }
  model.target_theta = j.at("target_theta").get<double>();
  if (!(model.target_theta > 0.0) || !(model.target_theta < 3.14159265358979))
    throw pulsetrain::ConfigError("model.target_theta must lie in (0, pi)");
  return model;
}

int run_tomo(const std::string& config_path, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(read_file(config_path));
  } catch (const json::exception& e) {
    throw pulsetrain::ConfigError(std::string("tomo config: ") + e.what());
  }
  const pulsetrain::AmplificationModel model = parse_model(j.at("model"));
  const double epsilon = j.at("epsilon").get<double>();
  const std::vector<int> n_values = j.at("n_values").get<std::vector<int>>();
  std::optional<long> shots;
  if (j.contains("shots")) shots = j["shots"].get<long>();

  const pulsetrain::MeasurementSeries series =
      pulsetrain::amplified_series(model, epsilon, n_values, shots, seed);
  const auto [eps_hat, residual] = pulsetrain::estimate_error(model, series);

  json out;
  out["series"]["n_values"] = series.n_values;
  out["series"]["populations"] = series.populations;
  if (shots) out["series"]["shots"] = *shots;
  out["seed"] = seed;
  out["epsilon_true"] = epsilon;
  out["epsilon_hat"] = eps_hat;
  out["residual"] = residual;
  std::cout << out.dump(2) << '\n';
  return 0;
}

Eigen::MatrixXcd matrix_from_json(const json& rows) {
  const auto r = rows.size();
  const auto c = rows.at(0).size();
  Eigen::MatrixXcd m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {
          rows[i][k][0].get<double>(), rows[i][k][1].get<double>()};
  return m;
}

int run_verify(const std::string& path_a, const std::string& path_b,
               double tol) {
  json a = json::parse(read_file(path_a));
  json b = json::parse(read_file(path_b));
  const json& results_a = a.at("results");
  const json& results_b = b.at("results");
  if (results_a.size() != results_b.size())
    throw pulsetrain::ConfigError("files hold different numbers of results");
  double max_dev = 0.0;
  for (std::size_t i = 0; i < results_a.size(); ++i) {
    if (results_a[i].at("N") != results_b[i].at("N"))
      throw pulsetrain::ConfigError("pass counts differ between the files");
    const double dev = pulsetrain::oracle::max_abs_deviation(
        matrix_from_json(results_a[i].at("propagator")),
        matrix_from_json(results_b[i].at("propagator")));
    if (dev > max_dev) max_dev = dev;
  }
  std::cout << "max_abs_deviation " << pulsetrain::format_double(max_dev)
            << '\n';
  return max_dev > tol ? kExitDeviation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-train propagators of Majorana and Morris-Shore systems"};
  app.require_subcommand(1);

  std::string config_path;
  bool verify_flag = false;
  std::optional<std::string> out_path;
  auto* simulate = app.add_subcommand(
      "simulate", "Compute single/N-pass propagators and population tables");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_flag("--verify", verify_flag,
                     "Compare against brute-force integration");
  std::string out_value;
  auto* out_opt =
      simulate->add_option("--out", out_value, "Write output to a file");

  std::string tomo_config;
  std::uint64_t seed = 0;
  bool seed_given = false;
  auto* tomo = app.add_subcommand(
      "tomo", "Amplified gate-error series and single-pass error estimate");
  tomo->add_option("--config", tomo_config, "JSON tomo config")->required();
  auto* seed_opt = tomo->add_option("--seed", seed, "PRNG seed (required)");

  std::string path_a, path_b;
  double tol = 1e-9;
  auto* verify = app.add_subcommand(
      "verify", "Compare two stored propagator files elementwise");
  verify->add_option("--a", path_a, "First propagator JSON")->required();
  verify->add_option("--b", path_b, "Second propagator JSON")->required();
  verify->add_option("--tol", tol, "Maximum allowed deviation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      if (*out_opt) out_path = out_value;
      return run_simulate(config_path, verify_flag, out_path);
    }
    if (tomo->parsed()) {
      seed_given = static_cast<bool>(*seed_opt);
      if (!seed_given) {
        std::cerr << "tomo requires an explicit --seed\n";
        return kExitConfigError;
      }
      return run_tomo(tomo_config, seed);
    }
    return run_verify(path_a, path_b, tol);
  } catch (const pulsetrain::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
}
