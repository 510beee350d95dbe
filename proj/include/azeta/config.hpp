#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "azeta/homog.hpp"
#include "azeta/zeta.hpp"

namespace azeta {

struct RunConfig {
  std::string name;
  nlohmann::json phi_spec;
  PhiPtr phi;
  Mat generator;
  ZetaOptions zeta;
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  // zeta subcommand
  std::vector<cplx> s_points;
  std::string method = "auto";  // auto | direct | continued

  // theta subcommand
  std::vector<double> theta_moduli{1.0, 0.5, 0.2, 0.1};
  std::vector<double> theta_angles{0.0};

  // volume and count subcommands
  std::uint64_t mc_samples = 1000000;
  std::vector<double> radii{1e2, 1e3, 1e4, 1e5, 1e6};
  double count_budget = 1e8;

  // asymp subcommand
  int N = 3;
  double eps = 0.1;
  double delta = M_PI / 12.0;
  std::vector<double> ray_angles{0.0};
  std::vector<double> asymp_moduli{0.4, 0.2, 0.1, 0.05};
};

// Throws ConfigError with the offending field (or line) in the message.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

PhiPtr build_phi(const nlohmann::json& spec, const std::string& where = "phi");

// "2", "-1.5", "0.5+2i", "3-4.5i", "2i"
cplx parse_complex(const std::string& text);

}  // namespace azeta
