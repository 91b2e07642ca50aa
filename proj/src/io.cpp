#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "caustic/experiment.hpp"
#include "json.hpp"

namespace caustic {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

json config_json(const WaveConfig& c) {
  return json{{"theta", c.theta},
              {"sigma", c.sigma},
              {"k_list", c.k_list},
              {"y_half_width_sigmas", c.y_half_width_sigmas},
              {"y_points", c.y_points},
              {"quad_tol", c.quad_tol},
              {"tail_tol", c.tail_tol},
              {"spectral_floor", c.spectral_floor},
              {"seed", c.seed},
              {"threads", c.threads},
              {"out_dir", c.out_dir},
              {"run_checks", c.run_checks}};
}

WaveConfig config_of(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const std::set<std::string> known{"theta", "sigma", "k_list", "y_half_width_sigmas",
                                           "y_points", "quad_tol", "tail_tol", "spectral_floor",
                                           "seed", "threads", "out_dir", "run_checks"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  WaveConfig c;
  auto get = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("config: bad value for '") + key + "': " + e.what());
    }
  };
  get("theta", c.theta);
  get("sigma", c.sigma);
  get("k_list", c.k_list);
  get("y_half_width_sigmas", c.y_half_width_sigmas);
  get("y_points", c.y_points);
  get("quad_tol", c.quad_tol);
  get("tail_tol", c.tail_tol);
  get("spectral_floor", c.spectral_floor);
  get("seed", c.seed);
  get("threads", c.threads);
  get("out_dir", c.out_dir);
  get("run_checks", c.run_checks);
  validate(c);
  return c;
}

json fit_json(const RateFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual_spread", f.residual_spread}};
}

RateFit fit_of(const json& j) {
  return {j.at("slope").get<double>(), j.at("intercept").get<double>(),
          j.at("residual_spread").get<double>()};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

} // namespace

WaveConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config_of(j);
}

WaveConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json_text(const WaveConfig& cfg) { return config_json(cfg).dump(2); }

std::string report_to_json_text(const ConvergenceReport& r) {
  json recs = json::array();
  for (const CausticError& e : r.records)
    recs.push_back({{"k", e.k},
                    {"linf_error", e.linf_error},
                    {"max_u_exact", e.max_u_exact},
                    {"relative_error", e.relative_error},
                    {"refinement_change", e.refinement_change},
                    {"spot_check_y", e.spot_check_y},
                    {"spot_check_diff", e.spot_check_diff},
                    {"spectral_error_bound", e.spectral_error_bound},
                    {"eta_points", e.eta_points},
                    {"runtime_s", e.runtime_s}});
  json checks = json::array();
  for (const LemmaCheck& c : r.lemma_checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"fitted_constant", c.fitted_constant},
                      {"detail", c.detail}});
  json j{{"config", config_json(r.config)},
         {"records", recs},
         {"fitted_rate", fit_json(r.rate)},
         {"fitted_relative_rate", fit_json(r.relative_rate)},
         {"amplitude_spread", r.amplitude_spread},
         {"lemma_checks", checks},
         {"acceptance",
          {{"rate", r.rate_ok},
           {"relative_rate", r.relative_rate_ok},
           {"amplitude", r.amplitude_ok},
           {"monotone", r.monotone_ok},
           {"checks", r.checks_ok},
           {"passed", r.passed}}},
         {"failure", r.failure}};
  return j.dump(2);
}

ConvergenceReport report_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  ConvergenceReport r;
  r.config = config_of(j.at("config"));
  for (const json& e : j.at("records")) {
    CausticError c;
    c.k = e.at("k").get<double>();
    c.linf_error = e.at("linf_error").get<double>();
    c.max_u_exact = e.at("max_u_exact").get<double>();
    c.relative_error = e.at("relative_error").get<double>();
    c.refinement_change = e.at("refinement_change").get<double>();
    c.spot_check_y = e.at("spot_check_y").get<double>();
    c.spot_check_diff = e.at("spot_check_diff").get<double>();
    c.spectral_error_bound = e.at("spectral_error_bound").get<double>();
    c.eta_points = e.at("eta_points").get<int>();
    c.runtime_s = e.at("runtime_s").get<double>();
    r.records.push_back(c);
  }
  r.rate = fit_of(j.at("fitted_rate"));
  r.relative_rate = fit_of(j.at("fitted_relative_rate"));
  r.amplitude_spread = j.at("amplitude_spread").get<double>();
  for (const json& c : j.at("lemma_checks"))
    r.lemma_checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                              c.at("fitted_constant").get<double>(), c.at("detail").get<std::string>()});
  const json& a = j.at("acceptance");
  r.rate_ok = a.at("rate").get<bool>();
  r.relative_rate_ok = a.at("relative_rate").get<bool>();
  r.amplitude_ok = a.at("amplitude").get<bool>();
  r.monotone_ok = a.at("monotone").get<bool>();
  r.checks_ok = a.at("checks").get<bool>();
  r.passed = a.at("passed").get<bool>();
  r.failure = j.at("failure").get<std::string>();
  return r;
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::string s = "k,linf_error,max_u_exact,relative_error,refinement_change,spot_check_diff,runtime_s\n";
  for (const CausticError& e : r.records)
    s += format_double(e.k) + "," + format_double(e.linf_error) + "," + format_double(e.max_u_exact) +
         "," + format_double(e.relative_error) + "," + format_double(e.refinement_change) + "," +
         format_double(e.spot_check_diff) + "," + format_double(e.runtime_s) + "\n";
  return s;
}

std::string field_csv(const FieldSlice& f) {
  std::string s = "y,re,im\n";
  for (Eigen::Index i = 0; i < f.y.size(); ++i)
    s += format_double(f.y[i]) + "," + format_double(f.u[i].real()) + "," + format_double(f.u[i].imag()) + "\n";
  return s;
}

void write_outputs(const ConvergenceReport& r, const std::vector<CausticSlices>& slices,
                   const std::string& dir) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  write_file(root / "report.json", report_to_json_text(r) + "\n");
  write_file(root / "convergence.csv", convergence_csv(r));
  std::string dat = "# k linf_error\n";
  for (const CausticError& e : r.records) dat += format_double(e.k) + " " + format_double(e.linf_error) + "\n";
  write_file(root / "error_vs_k.dat", dat);
  for (const CausticSlices& s : slices) {
    if (s.exact.y.size() == 0) continue;
    std::string t = "# y |u_exact| |u_gb|\n";
    for (Eigen::Index i = 0; i < s.exact.y.size(); ++i)
      t += format_double(s.exact.y[i]) + " " + format_double(std::abs(s.exact.u[i])) + " " +
           format_double(std::abs(s.beam.u[i])) + "\n";
    write_file(root / ("slice_k" + format_double(s.exact.k) + ".dat"), t);
  }
}

} // namespace caustic
