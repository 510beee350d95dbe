#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace azeta {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Rigor { rigorous, heuristic };

inline const char* rigor_name(Rigor r) {
  return r == Rigor::rigorous ? "rigorous" : "heuristic";
}

inline Rigor weakest(Rigor a, Rigor b) {
  return (a == Rigor::heuristic || b == Rigor::heuristic) ? Rigor::heuristic
                                                          : Rigor::rigorous;
}

struct BoundedValue {
  cplx value{0.0, 0.0};
  double error = 0.0;
  Rigor kind = Rigor::rigorous;

  double real() const { return value.real(); }
};

}  // namespace azeta
