#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pulsetrain/twostate.hpp"

namespace pulsetrain {

/// L ground states coupled to M excited states by the constant matrix
/// omega (L x M), all couplings sharing the pulse's time dependence and
/// detuning. Requires L >= M.
struct MSSystem {
  Eigen::MatrixXcd omega;
  PulseShape pulse;

  int ground_count() const { return static_cast<int>(omega.rows()); }
  int excited_count() const { return static_cast<int>(omega.cols()); }
};

/// Morris-Shore splitting of the coupling matrix: s_l omega s_m^dagger is
/// diagonal with the nonnegative lambdas (descending) on the bright
/// positions; the last dark_count ground basis states are dark.
struct MSDecomposition {
  Eigen::MatrixXcd s_l;          // L x L unitary
  Eigen::MatrixXcd s_m;          // M x M unitary
  std::vector<double> lambdas;   // M singular values, descending
  int dark_count;                // L - M

  /// Number of lambdas above 1e-12 * lambda_max (rank of omega).
  int rank() const;
};

MSDecomposition decompose(const Eigen::MatrixXcd& omega);

/// Propagator of the full (L+M)-state system with its per-channel solutions.
struct MSPropagator {
  int dim;
  Eigen::MatrixXcd matrix;
  std::vector<MSPairSolution> pairs;
  int n_passes;
};

MSPropagator single_pass(const MSSystem& system);
MSPropagator multi_pass(const MSSystem& system, int n);

/// Closed-form N-pass propagator of L ground states coupled to one excited
/// state. ck is the single-pass pair (a, b) of the bright channel (the top
/// row of the det = e^{-i delta} block), delta the accumulated detuning.
Eigen::MatrixXcd multipod_npass(const std::vector<Complex>& omegas,
                                const CKPair& ck, double delta, int n);

Eigen::MatrixXcd lambda_npass(Complex omega1, Complex omega2, const CKPair& ck,
                              double delta, int n);

Eigen::MatrixXcd tripod_npass(Complex omega1, Complex omega2, Complex omega3,
                              const CKPair& ck, double delta, int n);

/// Orthonormal basis of the null space of omega^dagger: the ground-space
/// vectors untouched by any propagator of the system.
std::vector<Eigen::VectorXcd> dark_basis(const Eigen::MatrixXcd& omega);

}  // namespace pulsetrain
