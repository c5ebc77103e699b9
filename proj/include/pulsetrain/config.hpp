#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pulsetrain/pulses.hpp"

namespace pulsetrain {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MajoranaSpec {
  int m_states;
};
struct MSMatrixSpec {
  Eigen::MatrixXcd omega;
};
struct MultipodSpec {
  std::vector<Complex> omegas;  // L = 2 lambda, L = 3 tripod, general multipod
};

enum class OutputFormat { Csv, Json };
enum class OutputWhat { Propagator, Populations, Both };

struct RunConfig {
  std::variant<MajoranaSpec, MSMatrixSpec, MultipodSpec> system;
  PulseShape pulse;
  std::vector<int> n_values;
  OutputFormat format = OutputFormat::Csv;
  OutputWhat what = OutputWhat::Populations;
  std::optional<int> initial_state;  // 1-based basis index
  bool verify = false;
};

/// Parses and validates a JSON config document; throws ConfigError with the
/// offending key path in the message.
RunConfig parse_config(const std::string& text);

/// Serializes the effective config back to its JSON document form.
std::string emit_config(const RunConfig& config);

struct RunResult {
  int exit_code;       // 0 ok, 4 verification deviation above 1e-6
  double max_abs_deviation = 0.0;  // only meaningful when verify was set
};

/// Computes the requested propagators and writes the declared output.
RunResult run(const RunConfig& config, std::ostream& out);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

}  // namespace pulsetrain
