#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <utility>

#include "pulsetrain/pulses.hpp"

namespace pulsetrain {

/// Raised when a computation would need an ill-conditioned eigenvector
/// construction near sin(theta) = 0; callers should fall back to the
/// direct power route, which handles that limit exactly.
class DegenerateAngleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair (a, b) of complex Cayley-Klein parameters with |a|^2 + |b|^2 = 1.
/// Inputs off the unit sphere by more than 1e-6 are rejected; smaller
/// deviations (accumulated rounding) are silently renormalized.
class CKPair {
 public:
  CKPair() : a_(1.0, 0.0), b_(0.0, 0.0) {}
  CKPair(Complex a, Complex b);

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  /// The SU(2) matrix [[a, b], [-b*, a*]].
  Eigen::Matrix2cd matrix() const;

 private:
  Complex a_, b_;
};

/// The SU(2)-gauge pair of one Morris-Shore two-state channel together with
/// the accumulated detuning. The physical 2x2 block has determinant
/// e^{-i delta} and is recovered by reassemble().
struct MSPairSolution {
  CKPair ck;     // primed gauge: a' = a e^{i delta/2}, b' = b e^{i delta/2}
  double delta;  // accumulated detuning

  /// The 2x2 matrix [[a, b], [-b* e^{-i delta}, a* e^{-i delta}]].
  Eigen::Matrix2cd reassemble() const;
};

struct PowerAngle {
  double theta;  // in [0, pi], cos(theta) = Re a
};

/// CK parameters of the propagator generated by the traceless Hamiltonian
/// (1/2) [[-Delta, Omega], [Omega*, Delta]] over one pulse.
CKPair solve_traceless(const PulseShape& pulse);

/// Solves one Morris-Shore channel: off-diagonal lambda * Omega(t), diagonal
/// (0, Delta(t)). Returns the primed pair and the accumulated detuning.
MSPairSolution solve_ms_pair(double lambda, const PulseShape& pulse);

/// Closed-form N-th power of an SU(2) matrix in CK parameters.
CKPair su2_power(const CKPair& ck, int n);

/// Result of raising a det = e^{-i delta} block to the N-th power.
struct PrimedPower {
  CKPair ck;          // (a'_N, b'_N): the top row of the N-pass block
  double total_phase;  // N * delta

  /// [[a'_N, b'_N], [-b'_N* e^{-i N delta}, a'_N* e^{-i N delta}]].
  Eigen::Matrix2cd reassemble() const;
};

PrimedPower primed_power(const MSPairSolution& sol, int n);

PowerAngle power_angle(const CKPair& ck);

}  // namespace pulsetrain
