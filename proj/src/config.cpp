#include "pulsetrain/config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pulsetrain/majorana.hpp"
#include "pulsetrain/morris_shore.hpp"
#include "pulsetrain/oracle.hpp"

namespace pulsetrain {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) fail(path + "." + key, "unknown key");
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(path, "expected a two-element [re, im] array");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> parse_real_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(path, "expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

PulseShape parse_pulse(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path,
             {"kind", "peak_rabi", "duration", "detuning", "center", "width",
              "samples", "grid_steps"});
  if (!j.contains("kind") || !j.contains("peak_rabi") || !j.contains("duration"))
    fail(path, "kind, peak_rabi and duration are required");

  PulseShape p;
  p.peak_rabi = parse_complex(j["peak_rabi"], path + ".peak_rabi");
  p.duration = j["duration"].get<double>();
  if (!(p.duration > 0.0)) fail(path + ".duration", "must be > 0");

  const std::string kind = j["kind"].get<std::string>();
  if (kind == "rectangular") {
    p.kind = EnvelopeKind::Rectangular;
  } else if (kind == "sin_squared") {
    p.kind = EnvelopeKind::SinSquared;
  } else if (kind == "gaussian") {
    p.kind = EnvelopeKind::Gaussian;
    if (!j.contains("center") || !j.contains("width"))
      fail(path, "gaussian pulses need center and width");
    p.gauss_center = j["center"].get<double>();
    p.gauss_width = j["width"].get<double>();
  } else if (kind == "sampled") {
    p.kind = EnvelopeKind::Sampled;
    if (!j.contains("samples")) fail(path, "sampled pulses need samples");
    p.envelope_samples = parse_real_list(j["samples"], path + ".samples");
  } else {
    fail(path + ".kind", "unknown pulse kind '" + kind + "'");
  }

  if (j.contains("detuning")) {
    const json& d = j["detuning"];
    const std::string dpath = path + ".detuning";
    if (!d.is_object()) fail(dpath, "expected an object");
    check_keys(d, dpath, {"kind", "delta0", "rate", "samples"});
    const std::string dkind = d.value("kind", "constant");
    if (dkind == "constant") {
      p.detuning_kind = DetuningKind::Constant;
      p.delta0 = d.value("delta0", 0.0);
    } else if (dkind == "chirp") {
      p.detuning_kind = DetuningKind::LinearChirp;
      p.delta0 = d.value("delta0", 0.0);
      p.chirp_rate = d.value("rate", 0.0);
    } else if (dkind == "sampled") {
      p.detuning_kind = DetuningKind::Sampled;
      if (!d.contains("samples")) fail(dpath, "sampled detuning needs samples");
      p.detuning_samples = parse_real_list(d["samples"], dpath + ".samples");
    } else {
      fail(dpath + ".kind", "unknown detuning kind '" + dkind + "'");
    }
  }

  if (j.contains("grid_steps")) {
    p.grid_steps = j["grid_steps"].get<int>();
    if (p.grid_steps < 16) fail(path + ".grid_steps", "must be >= 16");
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return p;
}

std::vector<Complex> parse_pod_couplings(const json& j, const std::string& path,
                                         const std::vector<std::string>& keys) {
  check_keys(j, path, {keys.begin(), keys.end()});
  std::vector<Complex> omegas;
  for (const auto& key : keys) {
    if (!j.contains(key)) fail(path + "." + key, "required");
    omegas.push_back(parse_complex(j[key], path + "." + key));
  }
  return omegas;
}

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  if (!j.is_object()) fail("config", "expected a JSON object");
  check_keys(j, "config", {"system", "pulse", "train", "output", "verify"});
  if (!j.contains("system") || !j.contains("pulse") || !j.contains("train"))
    fail("config", "system, pulse and train sections are required");

  RunConfig config;

  const json& sys = j["system"];
  if (!sys.is_object() || sys.size() != 1)
    fail("config.system",
         "exactly one of majorana, ms, lambda, tripod, multipod must be given");
  check_keys(sys, "config.system",
             {"majorana", "ms", "lambda", "tripod", "multipod"});
  if (sys.contains("majorana")) {
    const json& m = sys["majorana"];
    check_keys(m, "config.system.majorana", {"M"});
    if (!m.contains("M")) fail("config.system.majorana.M", "required");
    const int m_states = m["M"].get<int>();
    if (m_states < 2) fail("config.system.majorana.M", "M >= 2 is required");
    if (m_states > kMaxMajoranaStates)
      fail("config.system.majorana.M", "M <= 30 is required");
    config.system = MajoranaSpec{m_states};
  } else if (sys.contains("ms")) {
    const json& m = sys["ms"];
    check_keys(m, "config.system.ms", {"omega"});
    if (!m.contains("omega") || !m["omega"].is_array() || m["omega"].empty())
      fail("config.system.ms.omega", "expected a nonempty matrix");
    const auto rows = m["omega"].size();
    const auto cols = m["omega"][0].size();
    Eigen::MatrixXcd omega(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const json& row = m["omega"][r];
      if (!row.is_array() || row.size() != cols)
        fail("config.system.ms.omega", "rows must have equal length");
      for (std::size_t c = 0; c < cols; ++c)
        omega(r, c) = parse_complex(
            row[c], "config.system.ms.omega[" + std::to_string(r) + "][" +
                        std::to_string(c) + "]");
    }
    if (omega.rows() < omega.cols())
      fail("config.system.ms.omega", "L >= M is required (transpose the matrix)");
    if (omega.cwiseAbs().maxCoeff() == 0.0)
      fail("config.system.ms.omega", "matrix must have a nonzero entry");
    config.system = MSMatrixSpec{std::move(omega)};
  } else if (sys.contains("lambda")) {
    config.system = MultipodSpec{parse_pod_couplings(
        sys["lambda"], "config.system.lambda", {"omega1", "omega2"})};
  } else if (sys.contains("tripod")) {
    config.system = MultipodSpec{
        parse_pod_couplings(sys["tripod"], "config.system.tripod",
                            {"omega1", "omega2", "omega3"})};
  } else {
    const json& m = sys["multipod"];
    check_keys(m, "config.system.multipod", {"omegas"});
    if (!m.contains("omegas") || !m["omegas"].is_array() || m["omegas"].empty())
      fail("config.system.multipod.omegas", "expected a nonempty array");
    MultipodSpec spec;
    for (std::size_t i = 0; i < m["omegas"].size(); ++i)
      spec.omegas.push_back(
          parse_complex(m["omegas"][i],
                        "config.system.multipod.omegas[" + std::to_string(i) + "]"));
    config.system = std::move(spec);
  }
  if (const auto* pod = std::get_if<MultipodSpec>(&config.system)) {
    double norm2 = 0.0;
    for (const Complex& o : pod->omegas) norm2 += std::norm(o);
    if (norm2 == 0.0)
      fail("config.system", "at least one coupling must be nonzero");
  }

  config.pulse = parse_pulse(j["pulse"], "config.pulse");

  const json& train = j["train"];
  if (!train.is_object()) fail("config.train", "expected an object");
  check_keys(train, "config.train", {"N", "N_list"});
  if (train.contains("N") == train.contains("N_list"))
    fail("config.train", "exactly one of N and N_list must be given");
  if (train.contains("N")) {
    config.n_values = {train["N"].get<int>()};
  } else {
    for (const auto& v : train["N_list"]) config.n_values.push_back(v.get<int>());
    if (config.n_values.empty()) fail("config.train.N_list", "must be nonempty");
  }
  for (int n : config.n_values)
    if (n < 1) fail("config.train", "N >= 1 is required");

  if (j.contains("output")) {
    const json& out = j["output"];
    check_keys(out, "config.output", {"format", "what", "initial_state"});
    const std::string format = out.value("format", "csv");
    if (format == "csv")
      config.format = OutputFormat::Csv;
    else if (format == "json")
      config.format = OutputFormat::Json;
    else
      fail("config.output.format", "must be csv or json");
    const std::string what = out.value("what", "populations");
    if (what == "propagator")
      config.what = OutputWhat::Propagator;
    else if (what == "populations")
      config.what = OutputWhat::Populations;
    else if (what == "both")
      config.what = OutputWhat::Both;
    else
      fail("config.output.what", "must be propagator, populations or both");
    if (config.format == OutputFormat::Csv && config.what != OutputWhat::Populations)
      fail("config.output", "propagator output requires the json format");
    if (out.contains("initial_state"))
      config.initial_state = out["initial_state"].get<int>();
  }

  config.verify = j.value("verify", false);
  return config;
}

std::string emit_config(const RunConfig& config) {
  json j;
  if (const auto* maj = std::get_if<MajoranaSpec>(&config.system)) {
    j["system"]["majorana"]["M"] = maj->m_states;
  } else if (const auto* ms = std::get_if<MSMatrixSpec>(&config.system)) {
    j["system"]["ms"]["omega"] = matrix_to_json(ms->omega);
  } else {
    const auto& pod = std::get<MultipodSpec>(config.system);
    json omegas = json::array();
    for (const Complex& o : pod.omegas) omegas.push_back(complex_to_json(o));
    j["system"]["multipod"]["omegas"] = std::move(omegas);
  }

  json& p = j["pulse"];
  switch (config.pulse.kind) {
    case EnvelopeKind::Rectangular:
      p["kind"] = "rectangular";
      break;
    case EnvelopeKind::SinSquared:
      p["kind"] = "sin_squared";
      break;
    case EnvelopeKind::Gaussian:
      p["kind"] = "gaussian";
      p["center"] = config.pulse.gauss_center;
      p["width"] = config.pulse.gauss_width;
      break;
    case EnvelopeKind::Sampled:
      p["kind"] = "sampled";
      p["samples"] = config.pulse.envelope_samples;
      break;
  }
  p["peak_rabi"] = complex_to_json(config.pulse.peak_rabi);
  p["duration"] = config.pulse.duration;
  p["grid_steps"] = config.pulse.grid_steps;
  switch (config.pulse.detuning_kind) {
    case DetuningKind::Constant:
      p["detuning"] = {{"kind", "constant"}, {"delta0", config.pulse.delta0}};
      break;
    case DetuningKind::LinearChirp:
      p["detuning"] = {{"kind", "chirp"},
                       {"delta0", config.pulse.delta0},
                       {"rate", config.pulse.chirp_rate}};
      break;
    case DetuningKind::Sampled:
      p["detuning"] = {{"kind", "sampled"},
                       {"samples", config.pulse.detuning_samples}};
      break;
  }

  if (config.n_values.size() == 1)
    j["train"]["N"] = config.n_values.front();
  else
    j["train"]["N_list"] = config.n_values;

  j["output"]["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
  j["output"]["what"] = config.what == OutputWhat::Propagator ? "propagator"
                        : config.what == OutputWhat::Populations ? "populations"
                                                                 : "both";
  if (config.initial_state) j["output"]["initial_state"] = *config.initial_state;
  j["verify"] = config.verify;
  return j.dump(2);
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

struct SystemRun {
  int dim;
  // single-pass propagator by formula, and the N-pass one
  std::function<Eigen::MatrixXcd(int)> npass;
  // oracle Hamiltonian of the full system
  oracle::TimeDependentHamiltonian oracle_h;
};

SystemRun prepare(const RunConfig& config) {
  const PulseShape& pulse = config.pulse;
  if (const auto* maj = std::get_if<MajoranaSpec>(&config.system)) {
    const int m = maj->m_states;
    const CKPair ck = solve_traceless(pulse);
    return SystemRun{
        m,
        [ck, m](int n) { return npass_propagator(ck, m, n).matrix; },
        {m, [m, pulse](double t) {
           const auto [rabi, det] = evaluate(pulse, t);
           return build_hamiltonian(m, rabi, det);
         }}};
  }
  Eigen::MatrixXcd omega;
  if (const auto* ms = std::get_if<MSMatrixSpec>(&config.system)) {
    omega = ms->omega;
  } else {
    const auto& pod = std::get<MultipodSpec>(config.system);
    omega.resize(static_cast<Eigen::Index>(pod.omegas.size()), 1);
    for (std::size_t i = 0; i < pod.omegas.size(); ++i)
      omega(static_cast<Eigen::Index>(i), 0) = pod.omegas[i];
  }
  const int dim = static_cast<int>(omega.rows() + omega.cols());
  oracle::TimeDependentHamiltonian h{
      dim, [omega, pulse, dim](double t) {
        const auto [rabi, det] = evaluate(pulse, t);
        Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
        const auto l = omega.rows();
        const auto m = omega.cols();
        full.topRightCorner(l, m) = rabi * omega;
        full.bottomLeftCorner(m, l) = std::conj(rabi) * omega.adjoint();
        full.bottomRightCorner(m, m) =
            det * Eigen::MatrixXcd::Identity(m, m);
        return full;
      }};
  if (const auto* pod = std::get_if<MultipodSpec>(&config.system)) {
    // Closed-form multipod path.
    double norm2 = 0.0;
    for (const Complex& o : pod->omegas) norm2 += std::norm(o);
    const MSPairSolution sol = solve_ms_pair(std::sqrt(norm2), pulse);
    const Complex unprime = std::exp(Complex{0.0, -sol.delta / 2.0});
    const CKPair ck(sol.ck.a() * unprime, sol.ck.b() * unprime);
    const std::vector<Complex> omegas = pod->omegas;
    const double delta = sol.delta;
    return SystemRun{dim,
                     [omegas, ck, delta](int n) {
                       return multipod_npass(omegas, ck, delta, n);
                     },
                     std::move(h)};
  }
  MSSystem system{std::move(omega), pulse};
  return SystemRun{
      dim, [system](int n) { return multi_pass(system, n).matrix; },
      std::move(h)};
}

void write_populations_csv(std::ostream& out, int n, int dim,
                           const Eigen::MatrixXcd& u,
                           std::optional<int> initial_state) {
  for (int from = 1; from <= dim; ++from) {
    if (initial_state && from != *initial_state) continue;
    for (int to = 1; to <= dim; ++to)
      out << n << ',' << from << ',' << to << ','
          << format_double(std::norm(u(to - 1, from - 1))) << '\n';
  }
}

json populations_json(int dim, const Eigen::MatrixXcd& u,
                      std::optional<int> initial_state) {
  json rows = json::array();
  for (int from = 1; from <= dim; ++from) {
    if (initial_state && from != *initial_state) continue;
    for (int to = 1; to <= dim; ++to)
      rows.push_back({{"from", from},
                      {"to", to},
                      {"population", std::norm(u(to - 1, from - 1))}});
  }
  return rows;
}

}  // namespace

RunResult run(const RunConfig& config, std::ostream& out) {
  const SystemRun system = prepare(config);
  if (config.initial_state &&
      (*config.initial_state < 1 || *config.initial_state > system.dim))
    throw std::domain_error("initial_state outside [1, dim]");

  double max_deviation = 0.0;
  Eigen::MatrixXcd oracle_single;
  if (config.verify)
    oracle_single = oracle::integrate(system.oracle_h, config.pulse.duration,
                                      oracle::kVerifySteps);

  json doc;
  json results = json::array();
  std::string csv;
  for (int n : config.n_values) {
    const Eigen::MatrixXcd u = system.npass(n);
    if (config.verify) {
      const double dev = oracle::max_abs_deviation(
          u, oracle::matrix_power(oracle_single, n));
      if (dev > max_deviation) max_deviation = dev;
    }
    if (config.format == OutputFormat::Csv) {
      std::ostringstream row_stream;
      write_populations_csv(row_stream, n, system.dim, u, config.initial_state);
      csv += row_stream.str();
    } else {
      json entry;
      entry["N"] = n;
      if (config.what != OutputWhat::Populations)
        entry["propagator"] = matrix_to_json(u);
      if (config.what != OutputWhat::Propagator)
        entry["populations"] =
            populations_json(system.dim, u, config.initial_state);
      results.push_back(std::move(entry));
    }
  }

  RunResult result{0, max_deviation};
  if (config.verify && max_deviation > 1e-6) result.exit_code = 4;

  if (config.format == OutputFormat::Csv) {
    out << "N,from,to,population\n" << csv;
    if (config.verify)
      out << "# max_abs_deviation," << format_double(max_deviation) << '\n';
  } else {
    doc["results"] = std::move(results);
    if (config.verify) doc["max_abs_deviation"] = max_deviation;
    out << doc.dump(2) << '\n';
  }
  return result;
}

}  // namespace pulsetrain
