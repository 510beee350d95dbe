#include "azeta/config.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "azeta/errors.hpp"

namespace azeta {

using nlohmann::json;

namespace {

const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("missing field \"" + where + "." + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return INFINITY;
  }
  throw ConfigError("field \"" + where + "\" must be a number");
}

double number_or(const json& j, const std::string& key, double def, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return def;
  return number(j.at(key), where + "." + key);
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError("field \"" + where + "\" must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Mat matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError("field \"" + where + "\" must be a nonempty array of rows");
  const std::size_t n = j.size();
  Mat M(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = numbers(j[i], where + "[" + std::to_string(i) + "]");
    if (row.size() != n) throw ConfigError("field \"" + where + "\" must be square");
    for (std::size_t k = 0; k < n; ++k) M(i, k) = row[k];
  }
  return M;
}

int integer(const json& j, const std::string& where) {
  double v = number(j, where);
  if (v != std::floor(v)) throw ConfigError("field \"" + where + "\" must be an integer");
  return int(v);
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  static const std::regex full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij])?$)");
  static const std::regex imag_only(R"(^([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]$)");
  std::smatch m;
  auto coef = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return std::stod(s);
  };
  if (std::regex_match(t, m, imag_only)) return {0.0, coef(m[1].str())};
  if (!t.empty() && std::regex_match(t, m, full)) {
    double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im = m[2].matched ? coef(m[2].str()) : 0.0;
    if (!m[1].matched && !m[2].matched) throw ConfigError("cannot parse complex number \"" + text + "\"");
    return {re, im};
  }
  throw ConfigError("cannot parse complex number \"" + text + "\"");
}

PhiPtr build_phi(const json& spec, const std::string& where) {
  const std::string type = need(spec, "type", where).get<std::string>();
  const double scale = number_or(spec, "scale", 1.0, where);
  if (type == "quadratic") {
    return HomogeneousFunction::quadratic(matrix(need(spec, "Q", where), where + ".Q"), scale);
  }
  if (type == "polynomial") {
    int n = integer(need(spec, "dim", where), where + ".dim");
    int d = integer(need(spec, "degree", where), where + ".degree");
    const auto& ts = need(spec, "terms", where);
    if (!ts.is_array()) throw ConfigError("field \"" + where + ".terms\" must be an array");
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::string w = where + ".terms[" + std::to_string(i) + "]";
      Monomial mo;
      mo.coef = number(need(ts[i], "coef", w), w + ".coef");
      for (double e : numbers(need(ts[i], "exps", w), w + ".exps")) mo.exps.push_back(int(e));
      terms.push_back(mo);
    }
    return HomogeneousFunction::polynomial(n, d, terms, scale);
  }
  if (type == "pnorm") {
    int n = integer(need(spec, "dim", where), where + ".dim");
    return HomogeneousFunction::pnorm(n, number(need(spec, "p", where), where + ".p"), scale);
  }
  if (type == "superellipse") {
    return HomogeneousFunction::superellipse(numbers(need(spec, "m", where), where + ".m"),
                                             number(need(spec, "q", where), where + ".q"), scale);
  }
  if (type == "profile") {
    if (spec.contains("base")) {
      auto base = build_phi(spec.at("base"), where + ".base");
      int res = spec.contains("resolution") ? integer(spec.at("resolution"), where + ".resolution") : 0;
      auto p = HomogeneousFunction::profile_from(*base, res);
      return scale == 1.0 ? p : p->scaled(scale);
    }
    Mat A = matrix(need(spec, "generator", where), where + ".generator");
    const auto& nodes = need(spec, "nodes", where);
    auto values = numbers(need(spec, "values", where), where + ".values");
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto v = numbers(nodes[i], where + ".nodes[" + std::to_string(i) + "]");
      pts.push_back(Eigen::Map<Vec>(v.data(), Eigen::Index(v.size())));
    }
    auto p = HomogeneousFunction::profile_values(std::make_shared<GeneratorMatrix>(A), pts, values);
    return scale == 1.0 ? p : p->scaled(scale);
  }
  throw ConfigError("field \"" + where + ".type\" must be one of quadratic, polynomial, pnorm, superellipse, profile");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
  RunConfig cfg;
  try {
    cfg.name = j.value("name", std::string("run"));
    cfg.phi_spec = need(j, "phi", "config");
    cfg.generator = matrix(need(j, "generator", "config"), "generator");
    try {
      cfg.phi = build_phi(cfg.phi_spec);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("phi rejected: ") + e.what());
    }
    if (cfg.generator.rows() != cfg.phi->dim())
      throw ConfigError("field \"generator\" has the wrong dimension for phi");
    GeneratorMatrix G(cfg.generator);
    if (!G.same_as(cfg.phi->generator(), 1e-9)) throw ConfigError("field \"generator\" does not match phi");

    if (j.contains("kernel")) {
      const auto& k = j.at("kernel");
      cfg.zeta.c = number_or(k, "c", 0.0, "kernel");
      cfg.zeta.b = number_or(k, "b", 0.0, "kernel");
      if (k.contains("k_max")) cfg.zeta.k_max = integer(k.at("k_max"), "kernel.k_max");
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.zeta.rel_target = number_or(t, "rel_target", cfg.zeta.rel_target, "tolerances");
      cfg.zeta.band = number_or(t, "band", cfg.zeta.band, "tolerances");
      cfg.zeta.direct_budget = number_or(t, "direct_budget", cfg.zeta.direct_budget, "tolerances");
      cfg.count_budget = number_or(t, "count_budget", cfg.count_budget, "tolerances");
      cfg.mc_samples = std::uint64_t(number_or(t, "mc_samples", double(cfg.mc_samples), "tolerances"));
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (j.contains("seed")) cfg.seed = std::uint64_t(number(j.at("seed"), "seed"));

    if (j.contains("zeta")) {
      const auto& z = j.at("zeta");
      if (z.contains("s")) {
        const auto& arr = z.at("s");
        if (!arr.is_array()) throw ConfigError("field \"zeta.s\" must be an array");
        for (const auto& v : arr) cfg.s_points.push_back(v.is_string() ? parse_complex(v.get<std::string>())
                                                                          : cplx(number(v, "zeta.s"), 0.0));
      }
      cfg.method = z.value("method", cfg.method);
      if (cfg.method != "auto" && cfg.method != "direct" && cfg.method != "continued")
        throw ConfigError("field \"zeta.method\" must be auto, direct or continued");
    }
    if (j.contains("theta")) {
      const auto& t = j.at("theta");
      if (t.contains("moduli")) cfg.theta_moduli = numbers(t.at("moduli"), "theta.moduli");
      if (t.contains("angles")) cfg.theta_angles = numbers(t.at("angles"), "theta.angles");
    }
    if (j.contains("count")) {
      const auto& c = j.at("count");
      if (c.contains("radii")) cfg.radii = numbers(c.at("radii"), "count.radii");
    }
    if (j.contains("asymp")) {
      const auto& a = j.at("asymp");
      if (a.contains("N")) cfg.N = integer(a.at("N"), "asymp.N");
      cfg.eps = number_or(a, "eps", cfg.eps, "asymp");
      cfg.delta = number_or(a, "delta", cfg.delta, "asymp");
      if (a.contains("angles")) cfg.ray_angles = numbers(a.at("angles"), "asymp.angles");
      if (a.contains("moduli")) cfg.asymp_moduli = numbers(a.at("moduli"), "asymp.moduli");
    }
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace azeta
