#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellipt/series.hpp"

namespace ellipt {

// B_n from sum_{j<=n} C(n+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2).
Scalar bernoulli(int n);

// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n for even k >= 2.
// BadWeight otherwise.
QYSeries<Scalar> eisenstein(int k, QExp n);

// G_2 = -E_2 / 24.
QYSeries<Scalar> g2(QExp n);

enum class DeltaEps { Delta, Eps };

// delta_i, eps_i built from theta null values:
//   delta1 = (t2^4 + t3^4)/8,   eps1 =  t2^4 t3^4 / 16,
//   delta2 = -(t1^4 + t3^4)/8,  eps2 =  t1^4 t3^4 / 16,
//   delta3 = (t1^4 - t2^4)/8,   eps3 = -t1^4 t2^4 / 16.
QYSeries<Scalar> delta_eps(int i, DeltaEps which, QExp n);

enum class ModularGroup { SL2Z, Gamma0_2, Gamma0Upper_2, GammaTheta };

std::string group_name(ModularGroup g);
ModularGroup parse_group(const std::string& name);

struct ModularFitResult {
  int weight = 0;
  ModularGroup group = ModularGroup::SL2Z;
  std::vector<std::string> basis;  // e.g. "E4^2", "delta2 eps2"
  std::vector<Scalar> coefficients;
  // First Fourier coefficient not reproduced by the fit, if any.
  std::optional<QExp> residual;
  bool ok() const { return !residual.has_value(); }
};

// Express a y-free series as a combination of the ring generators of the
// given group (E4, E6 over SL2Z; delta2, eps2 over Gamma^0(2)) in the given
// weight, then verify every remaining coefficient. Needs at least dim + 3
// Fourier coefficients (InsufficientCoefficients); Gamma_0(2) and Gamma_theta
// raise UnsupportedGroup.
ModularFitResult modular_fit(const QYSeries<Scalar>& f, int weight, ModularGroup group);

// Solve A x = b exactly, choosing pivot rows in order; nullopt if the
// leading rows never reach full column rank.
std::optional<std::vector<Scalar>> solve_leading(const std::vector<std::vector<Scalar>>& a,
                                                 const std::vector<Scalar>& b);

}  // namespace ellipt
