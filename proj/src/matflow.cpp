#include "azeta/matflow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "azeta/errors.hpp"
#include "azeta/parallel.hpp"

namespace azeta {

namespace {

constexpr double kEigCondLimit = 1e6;

double cond2(const Eigen::MatrixXcd& V) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin <= 0.0) return INFINITY;
  return s(0) / smin;
}

void check_square(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() < 1) throw DomainError("generator must be a nonempty square matrix");
  if (!A.allFinite()) throw DomainError("generator has non-finite entries");
}

void check_mplus(const Eigen::VectorXcd& ev) {
  for (int i = 0; i < ev.size(); ++i)
    if (!(ev(i).real() > 0.0))
      throw NotInMPlus("generator has an eigenvalue with nonpositive real part");
}

bool is_symmetric(const Mat& A) {
  return (A - A.transpose()).norm() <= 1e-14 * std::max(1.0, A.norm());
}

}  // namespace

std::vector<Vec> sphere_samples(int n, int count) {
  std::vector<Vec> out;
  if (n == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return out;
  }
  count = std::max(count, 4);
  out.reserve(count);
  if (n == 2) {
    for (int k = 0; k < count; ++k) {
      double th = 2.0 * M_PI * k / count;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      out.push_back(v);
    }
  } else if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      double z = 1.0 - (2.0 * k + 1.0) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double ph = golden * k;
      Vec v(3);
      v << r * std::cos(ph), r * std::sin(ph), z;
      out.push_back(v);
    }
  } else {
    CounterRng rng{0x5eed5eedULL};
    std::uint64_t k = 0;
    for (int i = 0; i < count; ++i) {
      Vec v(n);
      for (int d = 0; d < n; ++d) {
        double u1 = std::max(rng.uniform(k++), 1e-300);
        double u2 = rng.uniform(k++);
        v(d) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      }
      out.push_back(v / v.norm());
    }
  }
  return out;
}

Mat expm(const Mat& A0) {
  const int n = int(A0.rows());
  static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const double theta13 = 5.371920351148152;
  double norm1 = A0.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = std::max(0, int(std::ceil(std::log2(norm1 / theta13))));
  Mat A = A0 / std::ldexp(1.0, s);
  Mat I = Mat::Identity(n, n);
  Mat A2 = A * A;
  Mat A4 = A2 * A2;
  Mat A6 = A4 * A2;
  Mat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Mat R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

Mat solve_lyapunov(const Mat& A) {
  check_square(A);
  const int n = int(A.rows());
  Eigen::EigenSolver<Mat> es(A, false);
  check_mplus(es.eigenvalues());
  const int m = n * n;
  Mat K = Mat::Zero(m, m);
  Mat At = A.transpose();
  // column-major vec: vec(A^T L) = (I (x) A^T) vec L, vec(L A) = (A^T (x) I) vec L
  for (int j = 0; j < n; ++j) K.block(j * n, j * n, n, n) += At;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) K.block(p * n, q * n, n, n) += At(p, q) * Mat::Identity(n, n);
  Vec rhs = Vec::Zero(m);
  for (int i = 0; i < n; ++i) rhs(i * n + i) = 1.0;
  Eigen::FullPivLU<Mat> lu(K);
  if (lu.rank() < m || lu.rcond() < 1e-14) throw NumericalDegeneracy("Lyapunov Kronecker system is singular");
  Vec v = lu.solve(rhs);
  Mat L(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) L(i, j) = v(j * n + i);
  L = 0.5 * (L + L.transpose()).eval();
  Eigen::LLT<Mat> llt(L);
  if (llt.info() != Eigen::Success) throw NumericalDegeneracy("Lyapunov solution is not positive definite");
  return L;
}

GeneratorMatrix::GeneratorMatrix(const Mat& A, double eps_m) : A_(A), eps_m_(eps_m) {
  check_square(A);
  n_ = int(A.rows());
  Eigen::EigenSolver<Mat> es(A, true);
  if (es.info() != Eigen::Success) throw NumericalDegeneracy("eigendecomposition failed");
  evals_ = es.eigenvalues();
  check_mplus(evals_);
  alpha_ = A.trace();
  lambda_min_ = INFINITY;
  lambda_max_ = -INFINITY;
  for (int i = 0; i < n_; ++i) {
    lambda_min_ = std::min(lambda_min_, evals_(i).real());
    lambda_max_ = std::max(lambda_max_, evals_(i).real());
  }
  diagonal_ = true;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j && A(i, j) != 0.0) diagonal_ = false;
  bool defective = false;
  if (!diagonal_) {
    V_ = es.eigenvectors();
    double c = cond2(V_);
    defective = !(c < kEigCondLimit);
    if (!defective) {
      Vinv_ = V_.inverse();
      eig_path_ = true;
    }
  }
  L_ = solve_lyapunov(A);
  Eigen::SelfAdjointEigenSolver<Mat> ls(L_);
  Lsqrt_ = ls.operatorSqrt();
  Lisqrt_ = ls.operatorInverseSqrt();

  bounds_.defective = defective;
  if (defective) {
    bounds_.gamma = lambda_min_ - eps_m_;
    if (bounds_.gamma <= 0.0) bounds_.gamma = 0.5 * lambda_min_;
    bounds_.beta = lambda_max_ + eps_m_;
  } else {
    bounds_.gamma = lambda_min_;
    bounds_.beta = lambda_max_;
  }
  if (is_symmetric(A)) {
    // ||t^A x|| lies between t^{lambda_min}||x|| and t^{lambda_max}||x|| exactly.
    bounds_.c1 = 1.0;
    bounds_.c2 = 1.0;
  } else {
    const int nt = 48;
    int nx = n_ == 2 ? 64 : (n_ == 3 ? 256 : 512);
    auto dirs = sphere_samples(n_, nx);
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k <= nt; ++k) {
      double lt = std::log(1e4) * k / nt;
      for (int sgn : {1, -1}) {
        double t = std::exp(sgn * lt);
        Mat P = power(t);
        double el = sgn > 0 ? bounds_.gamma : bounds_.beta;
        double eu = sgn > 0 ? bounds_.beta : bounds_.gamma;
        for (const auto& u : dirs) {
          Vec x = Lisqrt_ * u;
          double r = (P * x).norm() / x.norm();
          lo = std::min(lo, r / std::pow(t, el));
          hi = std::max(hi, r / std::pow(t, eu));
        }
      }
    }
    bounds_.c1 = 0.5 * lo;
    bounds_.c2 = 2.0 * hi;
  }
}

Mat GeneratorMatrix::power(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("matrix_power: t must be positive and finite");
  if (t == 1.0) return Mat::Identity(n_, n_);
  double lt = std::log(t);
  if (diagonal_) {
    Mat P = Mat::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) P(i, i) = std::exp(lt * A_(i, i));
    return P;
  }
  if (eig_path_) {
    Eigen::VectorXcd d(n_);
    for (int i = 0; i < n_; ++i) d(i) = std::exp(lt * evals_(i));
    return (V_ * d.asDiagonal() * Vinv_).real();
  }
  return expm(lt * A_);
}

Vec GeneratorMatrix::flow(double tau, const Vec& x) const {
  if (diagonal_) {
    Vec y(n_);
    for (int i = 0; i < n_; ++i) y(i) = std::exp(tau * A_(i, i)) * x(i);
    return y;
  }
  if (eig_path_) {
    Eigen::VectorXcd c = Vinv_ * x.cast<cplx>();
    for (int i = 0; i < n_; ++i) c(i) *= std::exp(tau * evals_(i));
    return (V_ * c).real();
  }
  return expm(tau * A_) * x;
}

GeneratorMatrix GeneratorMatrix::transpose() const { return GeneratorMatrix(A_.transpose(), eps_m_); }

GeneratorMatrix GeneratorMatrix::scaled(double k) const {
  if (!(k > 0.0)) throw DomainError("generator scale must be positive");
  return GeneratorMatrix(A_ * k, eps_m_);
}

bool GeneratorMatrix::same_as(const GeneratorMatrix& o, double tol) const {
  return n_ == o.n_ && (A_ - o.A_).cwiseAbs().maxCoeff() <= tol * std::max(1.0, A_.cwiseAbs().maxCoeff());
}

Mat matrix_power(const GeneratorMatrix& G, double t) { return G.power(t); }

SpectralBounds spectral_bounds(const Mat& A, double eps_m) { return GeneratorMatrix(A, eps_m).bounds(); }

Polar polar_decompose(const GeneratorMatrix& G, const Vec& x) {
  double nx = x.norm();
  if (!(nx > 0.0)) throw DomainError("polar_decompose: x must be nonzero");
  const Mat& L = G.lyapunov();
  auto h = [&](double tau, Vec& u) {
    u = G.flow(-tau, x);
    return u.dot(L * u) - 1.0;
  };
  // S_L points have norms in [mL, ML].
  Eigen::SelfAdjointEigenSolver<Mat> ls(L, Eigen::EigenvaluesOnly);
  double mL = 1.0 / std::sqrt(ls.eigenvalues().maxCoeff());
  double ML = 1.0 / std::sqrt(ls.eigenvalues().minCoeff());
  double g = G.gamma(), b = G.beta();
  double ql = nx / (G.c2() * ML), qh = nx / (G.c1() * mL);
  double lo = std::min(std::log(ql) / b, std::log(ql) / g);
  double hi = std::max(std::log(qh) / g, std::log(qh) / b);
  Vec u;
  int widen = 0;
  while (!(h(lo, u) >= 0.0 && h(hi, u) <= 0.0)) {
    if (++widen > 8) throw InternalError("polar_decompose: bracket failure");
    double w = std::max(1.0, hi - lo);
    lo -= w;
    hi += w;
  }
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (h(mid, u) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double tau = 0.5 * (lo + hi);
  double hv = h(tau, u);
  // dh/dtau = -u^T (A^T L + L A) u = -|u|^2
  for (int it = 0; it < 5 && std::fabs(hv) > 1e-15; ++it) {
    tau += hv / u.squaredNorm();
    hv = h(tau, u);
  }
  return {std::exp(tau), u};
}

}  // namespace azeta
