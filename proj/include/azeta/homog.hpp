#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "azeta/matflow.hpp"

namespace azeta {

struct QuadraticForm {
  Mat Q;
};

struct Monomial {
  double coef;
  std::vector<int> exps;
};

struct HomogeneousPolynomial {
  int degree;
  std::vector<Monomial> terms;
};

// p = infinity gives the max-norm.
struct PNorm {
  double p;
};

// (sum |x_i|^{m_i})^{1/q} with generator diag(q / m_i).
struct AnisotropicSuperellipse {
  std::vector<double> m;
  double q;
};

// Positive samples of f on S_L; phi(t^A xbar) = t f(xbar).
struct Profile {
  // Nodes u_j on the unit sphere; S_L points are L^{-1/2} u_j.
  std::vector<Vec> nodes;
  std::vector<double> values;
  // n = 2: second derivatives of the periodic spline in the angle.
  std::vector<double> spline_m;
  // n = 3: Wendland support radius on the unit sphere.
  double radius = 0.0;
};

using Variant = std::variant<QuadraticForm, HomogeneousPolynomial, PNorm, AnisotropicSuperellipse, Profile>;

struct GrowthBounds {
  double c1, c2, c3, c4;
  double gamma, beta;
};

class HomogeneousFunction;
using PhiPtr = std::shared_ptr<const HomogeneousFunction>;

class HomogeneousFunction {
 public:
  static PhiPtr quadratic(const Mat& Q, double scale = 1.0);
  static PhiPtr polynomial(int n, int degree, std::vector<Monomial> terms, double scale = 1.0);
  static PhiPtr pnorm(int n, double p, double scale = 1.0);
  static PhiPtr superellipse(std::vector<double> m, double q, double scale = 1.0);
  // Sample f on S_L at a quasi-uniform node set; `resolution` is the node count.
  static PhiPtr profile(GeneratorPtr G, const std::function<double(const Vec&)>& f_on_SL,
                        int resolution = 0);
  static PhiPtr profile_from(const HomogeneousFunction& phi, int resolution = 0);
  static PhiPtr profile_values(GeneratorPtr G, std::vector<Vec> nodes, std::vector<double> values);

  double evaluate(const Vec& x) const;
  double operator()(const Vec& x) const { return evaluate(x); }
  // f(xbar) for xbar on S_L, without polar decomposition for closed forms.
  double on_sphere(const Vec& xbar) const;

  int dim() const { return G_->dim(); }
  double alpha() const { return G_->alpha(); }
  double scale() const { return scale_; }
  const GeneratorMatrix& generator() const { return *G_; }
  GeneratorPtr generator_ptr() const { return G_; }
  const Variant& variant() const { return variant_; }
  bool is_profile() const { return std::holds_alternative<Profile>(variant_); }
  bool even() const { return even_; }
  double positivity_certificate() const { return min_on_sphere_; }
  const GrowthBounds& growth() const { return growth_; }
  std::string describe() const;

  PhiPtr scaled(double a) const;

 private:
  HomogeneousFunction(GeneratorPtr G, Variant v, double scale);
  double raw(const Vec& x) const;
  double profile_raw(const Vec& xbar) const;
  void finalize();

  GeneratorPtr G_;
  Variant variant_;
  double scale_ = 1.0;
  bool even_ = true;
  double min_on_sphere_ = 0.0;
  GrowthBounds growth_{};
};

bool unit_ball_membership(const HomogeneousFunction& phi, const Vec& x, double r);
GrowthBounds growth_bounds(const HomogeneousFunction& phi);

struct Sandwich {
  PhiPtr lower;
  PhiPtr upper;
  // max psi2/psi1 over the sample grid
  double width;
};
Sandwich sandwich_smooth(const HomogeneousFunction& phi, double eps);

// Dense S_L sample (points satisfy <L x, x> = 1).
std::vector<Vec> sl_samples(const GeneratorMatrix& G, int count);

}  // namespace azeta
