#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "azeta/asymp.hpp"
#include "azeta/config.hpp"
#include "azeta/errors.hpp"
#include "azeta/theta.hpp"
#include "azeta/verify.hpp"
#include "azeta/volume.hpp"
#include "azeta/zeta.hpp"

using namespace azeta;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInvalid = 2, kBudget = 3;

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Output {
  std::filesystem::path dir;
  json summary;

  void csv(const std::string& name, const std::string& header, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(dir / name);
    f << header << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
      f << "\n";
    }
    summary["tables"].push_back(name);
  }
  void finish() {
    std::ofstream f(dir / "summary.json");
    f << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
  }
};

json phi_json(const RunConfig& cfg) {
  const auto& phi = *cfg.phi;
  return json{{"describe", phi.describe()}, {"dim", phi.dim()}, {"alpha", phi.alpha()},
              {"positivity_certificate", phi.positivity_certificate()}};
}

int run_zeta(const RunConfig& cfg, Output& out) {
  ZetaEngine eng(cfg.phi, cfg.zeta);
  const double al = cfg.phi->alpha();
  std::vector<std::vector<std::string>> rows;
  json res = json::array();
  for (cplx s : cfg.s_points) {
    std::string m = cfg.method;
    if (m == "auto") m = s.real() > al + 0.5 ? "direct" : "continued";
    MeromorphicValue z = m == "direct" ? eng.direct(s) : eng.continued(s);
    json e{{"s", cjson(s)}, {"value", cjson(z.value)}, {"error", z.error}, {"rigor", rigor_name(z.kind)},
           {"method", z.method}};
    if (z.near_pole) {
      e["near_pole"] = {{"location", z.near_pole->location},
                        {"distance", z.near_pole->distance},
                        {"residue", z.near_pole->residue},
                        {"constant", cjson(z.near_pole->constant)}};
    }
    res.push_back(e);
    rows.push_back({g17(s.real()), g17(s.imag()), g17(z.value.real()), g17(z.value.imag()), g17(z.error),
                    rigor_name(z.kind)});
  }
  out.summary["results"] = res;
  out.summary["kernel"] = eng.kernel().describe();
  out.csv("zeta.csv", "s_re,s_im,value_re,value_im,error,rigor", rows);
  return kOk;
}

int run_theta(const RunConfig& cfg, Output& out) {
  std::vector<std::vector<std::string>> rows;
  json res = json::array();
  for (double ang : cfg.theta_angles) {
    for (double r : cfg.theta_moduli) {
      cplx w = std::polar(r, ang);
      auto v = theta_phi(*cfg.phi, w);
      res.push_back({{"w", cjson(w)}, {"value", cjson(v.value)}, {"error", v.error}, {"rigor", rigor_name(v.kind)}});
      rows.push_back({g17(ang), g17(r), g17(w.real()), g17(w.imag()), g17(v.value.real()), g17(v.value.imag()),
                      g17(v.error), rigor_name(v.kind)});
    }
  }
  out.summary["results"] = res;
  out.csv("theta.csv", "angle,modulus,w_re,w_im,value_re,value_im,error,rigor", rows);
  return kOk;
}

int run_volume(const RunConfig& cfg, Output& out) {
  const auto& phi = *cfg.phi;
  auto q = volume_exp_integral(phi);
  auto mc = volume_monte_carlo(phi, cfg.mc_samples, cfg.seed);
  // Lattice estimate at the largest configured radius the budget allows.
  json lat = nullptr;
  std::vector<double> radii = cfg.radii;
  std::sort(radii.rbegin(), radii.rend());
  for (double r : radii) {
    try {
      auto c = lattice_count(phi, r, cfg.count_budget);
      double est = double(c) / std::pow(r, phi.alpha());
      lat = {{"r", r}, {"count", c}, {"estimate", est}, {"rigor", "heuristic"}};
      break;
    } catch (const BudgetExceeded&) {
    }
  }
  double diff = std::fabs(q.real() - mc.estimate);
  bool agree = diff <= mc.half_width + q.error;
  out.summary["exp_integral"] = {{"value", q.real()}, {"error", q.error}, {"rigor", rigor_name(q.kind)}};
  out.summary["monte_carlo"] = {{"value", mc.estimate}, {"error", mc.half_width}, {"std_error", mc.std_error},
                                {"samples", mc.samples}, {"rigor", "heuristic"}};
  out.summary["lattice"] = lat;
  out.summary["agreement"] = {{"difference", diff}, {"bound", mc.half_width + q.error}, {"pass", agree}};
  std::vector<std::vector<std::string>> rows{
      {"exp_integral", g17(q.real()), g17(q.error), rigor_name(q.kind)},
      {"monte_carlo", g17(mc.estimate), g17(mc.half_width), "heuristic"}};
  if (!lat.is_null())
    rows.push_back({"lattice", g17(lat["estimate"].get<double>()), g17(std::fabs(lat["estimate"].get<double>() - q.real())),
                    "heuristic"});
  out.csv("volume.csv", "estimator,value,error,rigor", rows);
  return agree ? kOk : kInvalid;
}

int run_count(const RunConfig& cfg, Output& out) {
  auto rep = counting_limit_scan(*cfg.phi, cfg.radii, cfg.count_budget, true);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rep.rows)
    rows.push_back({g17(r.r), std::to_string(r.count), g17(r.ratio), g17(r.target), g17(r.deviation)});
  out.csv("count.csv", "r,count,ratio,target,deviation", rows);
  std::vector<std::vector<std::string>> prow;
  json pj = json::array();
  for (const auto& p : rep.pole) {
    prow.push_back({g17(p.sigma), g17(p.value), g17(p.error), g17(p.target), g17(p.deviation)});
    pj.push_back({{"sigma", p.sigma}, {"value", p.value}, {"error", p.error}, {"deviation", p.deviation},
                  {"rigor", "heuristic"}});
  }
  out.csv("pole.csv", "sigma,value,error,target,deviation", prow);
  out.summary["volume"] = {{"value", rep.volume.real()}, {"error", rep.volume.error}, {"rigor", rigor_name(rep.volume.kind)}};
  json cj = json::array();
  for (const auto& r : rep.rows)
    cj.push_back({{"r", r.r}, {"count", r.count}, {"ratio", r.ratio}, {"deviation", r.deviation}, {"error", 0.0},
                  {"rigor", "rigorous"}});
  out.summary["counts"] = cj;
  out.summary["pole"] = pj;
  out.summary["skipped"] = rep.skipped;
  return rep.skipped.empty() ? kOk : kBudget;
}

int run_asymp(const RunConfig& cfg, Output& out) {
  ZetaOptions zo = cfg.zeta;
  zo.k_max = std::max(zo.k_max, cfg.N);
  ZetaEngine eng(cfg.phi, zo);
  std::vector<std::vector<std::string>> rows;
  json res = json::array();
  bool ok = true;
  for (double ang : cfg.ray_angles) {
    auto rep = remainder_check(eng, ang, cfg.N, cfg.eps, cfg.asymp_moduli, cfg.delta);
    ok = ok && rep.pass;
    json rj = json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({g17(ang), g17(r.modulus), g17(r.remainder), g17(r.error), g17(rep.slope)});
      rj.push_back({{"modulus", r.modulus}, {"theta", cjson(r.theta)}, {"expansion", cjson(r.expansion)},
                    {"remainder", r.remainder}, {"error", r.error}, {"rigor", "heuristic"}});
    }
    res.push_back({{"angle", ang}, {"slope", rep.slope}, {"required", rep.required}, {"pass", rep.pass}, {"rows", rj}});
  }
  out.summary["rays"] = res;
  out.summary["pass"] = ok;
  out.csv("asymp.csv", "angle,modulus,remainder,error,slope", rows);
  return ok ? kOk : kInvalid;
}

int run_verify(const RunConfig& cfg, Output& out) {
  VerifyOptions vo;
  vo.seed = cfg.seed;
  vo.mc_samples = cfg.mc_samples;
  vo.zeta = cfg.zeta;
  auto rep = verify_suite(cfg.phi, vo);
  std::vector<std::vector<std::string>> rows;
  json cj = json::array();
  for (const auto& c : rep.checks) {
    rows.push_back({c.name, c.pass ? "pass" : "fail", g17(c.measured), g17(c.tolerance), rigor_name(c.kind)});
    cj.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance},
                  {"rigor", rigor_name(c.kind)}, {"detail", c.detail}});
  }
  out.summary["checks"] = cj;
  out.summary["failures"] = rep.failures();
  out.csv("verify.csv", "check,status,measured,tolerance,rigor", rows);
  return rep.all_pass() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"azeta: Epstein-type zeta functions of anisotropically homogeneous functions"};
  app.require_subcommand(1);
  std::string config, outdir, method;
  std::vector<std::string> s_args;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--config", config, "run configuration (JSON)")->required();
    sc->add_option("--out", outdir, "output directory (overrides the config)");
  };
  auto* zeta = app.add_subcommand("zeta", "evaluate zeta(phi, s)");
  add_common(zeta);
  zeta->add_option("--s", s_args, "evaluation points such as 2+0i (repeatable)");
  zeta->add_option("--method", method, "auto, direct or continued");
  auto* theta = app.add_subcommand("theta", "theta(phi, iw) along rays");
  add_common(theta);
  auto* vol = app.add_subcommand("volume", "unit-ball volume by three estimators");
  add_common(vol);
  auto* cnt = app.add_subcommand("count", "lattice counting convergence table");
  add_common(cnt);
  auto* asy = app.add_subcommand("asymp", "theta expansion and remainder report");
  add_common(asy);
  auto* ver = app.add_subcommand("verify", "invariant suite");
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }

  try {
    RunConfig cfg = load_config(config);
    if (!s_args.empty()) {
      cfg.s_points.clear();
      for (const auto& s : s_args) cfg.s_points.push_back(parse_complex(s));
    }
    if (!method.empty()) {
      if (method != "auto" && method != "direct" && method != "continued")
        throw ConfigError("--method must be auto, direct or continued");
      cfg.method = method;
    }
    Output out;
    out.dir = outdir.empty() ? std::filesystem::path(cfg.output_dir) : std::filesystem::path(outdir);
    std::filesystem::create_directories(out.dir);
    const std::string cmd = app.get_subcommands().front()->get_name();
    out.summary["command"] = cmd;
    out.summary["name"] = cfg.name;
    out.summary["phi"] = phi_json(cfg);
    out.summary["seed"] = cfg.seed;
    out.summary["tables"] = json::array();
    int rc = kOk;
    if (cmd == "zeta") {
      if (cfg.s_points.empty()) throw ConfigError("no evaluation points: pass --s or set zeta.s");
      rc = run_zeta(cfg, out);
    } else if (cmd == "theta") {
      rc = run_theta(cfg, out);
    } else if (cmd == "volume") {
      rc = run_volume(cfg, out);
    } else if (cmd == "count") {
      rc = run_count(cfg, out);
    } else if (cmd == "asymp") {
      rc = run_asymp(cfg, out);
    } else {
      rc = run_verify(cfg, out);
    }
    out.summary["exit_code"] = rc;
    out.finish();
    return rc;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kInvalid;
  }
}
