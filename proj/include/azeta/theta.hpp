#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "azeta/kernel.hpp"
#include "azeta/types.hpp"

namespace azeta {

// Calls fn(omega) for every omega with |omega|_inf == m. With `half`, only the
// lexicographically positive representative of each pair {omega, -omega}.
void for_each_shell_point(int n, long m, bool half, const std::function<void(const Eigen::VectorXd&)>& fn);
// Lattice points with |omega|_inf == m.
double shell_count(int n, long m);

struct ThetaOptions {
  double abs_target = 0.0;  // absolute error goal; 0 means relative only
  double rel_target = 1e-15;
  long max_shell = 200000;
  bool allow_half = true;
};

// psi values of the lattice, grouped by sup-norm shell (half lattice when psi is even).
class PsiShells {
 public:
  explicit PsiShells(const Kernel& k);
  // Shell m, growing the table on demand. Thread-safe.
  const std::vector<double>& shell(long m) const;
  bool half() const { return half_; }

 private:
  const Kernel* k_;
  bool half_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<std::vector<double>>> shells_;
};

// sum over omega != 0 of g(t^G omega)
BoundedValue theta_star_matrix(const GeneratorMatrix& G, const Kernel& k, double t, const ThetaOptions& opt = {},
                               const PsiShells* cache = nullptr);

// sum over omega != 0 of ghat(t^{GT} omega) from the sampled transform; out-of-band
// points contribute zero plus the decay-model bound.
BoundedValue theta_star_transform(const GeneratorMatrix& GT, const SampledTransform& khat, double t, bool even = true);

// 1 + sum over omega != 0 of e^{-w phi(omega)}, Re w > 0.
BoundedValue theta_phi(const HomogeneousFunction& phi, cplx w, const ThetaOptions& opt = {});

struct JacobiResidual {
  double residual = 0.0;
  double bound = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  Rigor kind = Rigor::rigorous;
};

// |theta_G(g, i/t) - t^alpha theta_{G^T}(ghat, it)|
JacobiResidual jacobi_residual(const GeneratorMatrix& G, const Kernel& k, const SampledTransform& khat, double t);

}  // namespace azeta
