#pragma once

#include <memory>

#include "azeta/types.hpp"

namespace azeta {

struct SpectralBounds {
  double gamma = 0.0;
  double beta = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool defective = false;
};

// Generator A with cached spectral data. Immutable once built.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(const Mat& A, double eps_m = 0.05);

  int dim() const { return n_; }
  const Mat& entries() const { return A_; }
  double alpha() const { return alpha_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  double gamma() const { return bounds_.gamma; }
  double beta() const { return bounds_.beta; }
  double c1() const { return bounds_.c1; }
  double c2() const { return bounds_.c2; }
  bool defective() const { return bounds_.defective; }
  const SpectralBounds& bounds() const { return bounds_; }
  const Mat& lyapunov() const { return L_; }
  // L^{1/2} and L^{-1/2}, used to parametrize S_L by the unit sphere.
  const Mat& lyapunov_sqrt() const { return Lsqrt_; }
  const Mat& lyapunov_isqrt() const { return Lisqrt_; }

  // t^A; fast paths for diagonal and well-conditioned diagonalizable A.
  Mat power(double t) const;
  // e^{tau A} applied to a vector, avoiding the full matrix when possible.
  Vec flow(double tau, const Vec& x) const;

  GeneratorMatrix transpose() const;
  GeneratorMatrix scaled(double k) const;
  bool is_diagonal() const { return diagonal_; }
  bool same_as(const GeneratorMatrix& o, double tol = 1e-13) const;

 private:
  int n_;
  Mat A_;
  double eps_m_;
  double alpha_, lambda_min_, lambda_max_;
  SpectralBounds bounds_;
  Mat L_, Lsqrt_, Lisqrt_;
  bool diagonal_ = false;
  bool eig_path_ = false;
  Eigen::VectorXcd evals_;
  Eigen::MatrixXcd V_, Vinv_;
};

using GeneratorPtr = std::shared_ptr<const GeneratorMatrix>;

Mat matrix_power(const GeneratorMatrix& G, double t);
// Pade(13) scaling-and-squaring.
Mat expm(const Mat& A);
Mat solve_lyapunov(const Mat& A);
SpectralBounds spectral_bounds(const Mat& A, double eps_m = 0.05);

struct Polar {
  double t;
  Vec xbar;
};
Polar polar_decompose(const GeneratorMatrix& G, const Vec& x);

// Quasi-uniform directions on the unit sphere of R^n (n <= 3 deterministic grids,
// otherwise counter-based random points).
std::vector<Vec> sphere_samples(int n, int count);

}  // namespace azeta
