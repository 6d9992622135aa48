#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "mirrad/spectral.hpp"

namespace mirrad {

// An elimination pivot was exactly zero.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated tridiagonal system M g = Y for the sideband amplitudes g_m at a
// fixed base frequency omega. Rows/columns are ordered by sideband index
// m = -order..order, i.e. vector slot i holds m = i - order.
//
//   diag[i]      = i*K(omega_m)                  with omega_m = omega - m*omega0
//   offdiag[i]   = (dq0/2)*H(omega_m), m = i - order   (couples rows i, i+1;
//                  the matrix is symmetric, one sequence serves both sides)
//   rhs:  Y_{+1} = -(dq0/2)*H(omega),  Y_{-1} = -(dq0/2)*H(omega + omega0)
struct SidebandSystem {
  double omega = 0.0;
  ChannelParams params;
  double dq0 = 0.0;
  int order = 0;
  std::vector<std::complex<double>> diag;
  std::vector<std::complex<double>> offdiag;
  std::vector<std::complex<double>> rhs;

  int size() const { return 2 * order + 1; }
  double sideband_frequency(int m) const { return omega - m * params.omega0; }
};

// Solution map m -> g_m(omega). Entries outside the truncation are zero.
struct SidebandSolution {
  std::vector<std::complex<double>> g;  // slot i holds m = i - order
  int order = 0;
  bool condition_flag = false;  // some elimination pivot < 1e-12 * max entry
  double residual = 0.0;        // max-norm of M*g - Y

  std::complex<double> at(int m) const {
    if (m < -order || m > order) return {0.0, 0.0};
    return g[static_cast<std::size_t>(m + order)];
  }
};

// True when 0.1 <= omega0*dq0 < 0.3: still accepted, but the nonrelativistic
// expansion is getting marginal. Callers that talk to a user should warn.
bool drive_strength_marginal(const ChannelParams& params, double dq0);

// Builds the truncated system. Throws std::invalid_argument for order < 1,
// dq0 < 0, or omega0*dq0 >= 0.3 (nonrelativistic assumption violated).
SidebandSystem build_system(double omega, const ChannelParams& params, double dq0,
                            int order);

// Thomas elimination specialized to the tridiagonal layout. Near-singular
// systems come back flagged rather than throwing; the resonance locator
// deliberately probes that region. Throws SingularSystemError only on an
// exactly zero pivot.
SidebandSolution solve_tridiagonal(const SidebandSystem& system);

// Independent validation route: dense Gaussian elimination with partial
// pivoting over the full (2M+1)^2 matrix. Same flag/throw contract.
SidebandSolution solve_dense_oracle(const SidebandSystem& system);

// Denominator of the m in {-1,0,1} closed form,
//   D = K(w) + (dq0/2)^2 [H(w)^2/K(w_1) + H(w_-1)^2/K(w_-1)],
// with the sum of term magnitudes optionally reported for cancellation tests.
std::complex<double> closed_form_denominator(double omega, const ChannelParams& params,
                                             double dq0, double* term_scale = nullptr);

struct ClosedFormSolution {
  std::complex<double> g1;
  std::complex<double> g_minus1;
  std::complex<double> g0;
};

// Exact solution of the system truncated to m in {-1,0,1}:
//   g_1  = (i/2) (K(w)/K(w_1)) dq0 H(w) / D
//   g_-1 = [K(w_1) H(w_-1)] / [K(w_-1) H(w)] g_1
//   g_0  = -1 - 2i K(w_1) / (dq0 H(w)) g_1
// dq0 = 0 returns all zeros (static mirror leaves the field unchanged).
// Throws std::domain_error when K(w_1) or K(w_-1) is exactly zero (branch
// point) or when H(w) = 0 with dq0 > 0 (degenerate drive: the g_-1/g_0 ratios
// are undefined).
ClosedFormSolution closed_form_solution(double omega, const ChannelParams& params,
                                        double dq0);

struct PerturbativeSolution {
  std::complex<double> g1;
  std::complex<double> g_minus1;
};

// First order in dq0 (off-diagonal coupling neglected):
//   g_1 = (i/2) dq0 H(w)/K(w_1),   g_-1 = (i/2) dq0 H(w_-1)/K(w_-1).
PerturbativeSolution perturbative_solution(double omega, const ChannelParams& params,
                                           double dq0);

// Advanced-solution coefficients f_m = conj(g_m), componentwise.
SidebandSolution advanced_coefficients(const SidebandSolution& solution);

}  // namespace mirrad
