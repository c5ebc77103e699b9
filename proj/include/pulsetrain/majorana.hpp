#pragma once

#include <Eigen/Dense>
#include <utility>

#include "pulsetrain/twostate.hpp"

namespace pulsetrain {

inline constexpr int kMaxMajoranaStates = 30;  // factorial-precision bound

/// Tridiagonal M-state Hamiltonian of the spin-j representation
/// (M = 2j + 1): H_kk = (k - (M+1)/2) Delta, H_{k,k+1} = sqrt(k(M-k)) Omega / 2.
Eigen::MatrixXcd build_hamiltonian(int m_states, Complex rabi, double detuning);

/// Element (k, l) of the M-state propagator, 1-based indices, from the
/// rotation-matrix expansion in the CK parameters.
Complex wigner_element(const CKPair& ck, int m_states, int k, int l);

struct MajoranaPropagator {
  int m_states;
  Eigen::MatrixXcd matrix;
  CKPair source_ck;
};

MajoranaPropagator propagator_from_ck(const CKPair& ck, int m_states);

/// N-pass propagator via the CK power formulas: the M-state matrix built
/// from su2_power(ck, N). Equals the N-th matrix power of the single-pass one.
MajoranaPropagator npass_propagator(const CKPair& ck, int m_states, int n);

/// CK parameters (u, v) of the eigenvector matrix of the single-pass
/// propagator, plus the rotation angle theta.
struct DiagFactors {
  Complex u, v;
  double theta;
};

/// Requires |sin theta| > 1e-8; throws DegenerateAngleError otherwise.
DiagFactors diag_factors(const CKPair& ck);

/// N-pass propagator via diagonalization: V D^N V^dagger with V built from
/// diag_factors and D_kk = e^{i N (2k - 1 - M) theta}.
MajoranaPropagator npass_via_diagonalization(const CKPair& ck, int m_states,
                                             int n);

/// (sin^2(N theta), sin^4(N theta)): the two-state and three-state N-pass
/// transition probabilities for a real CK parameter a = cos(theta).
std::pair<double, double> three_state_probabilities(double theta, int n);

}  // namespace pulsetrain
