#include "fnls/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

namespace fnls {
namespace {

template <typename T>
void read_field(const ordered_json& block, const char* block_name,
                const char* key, T& dst) {
  if (!block.contains(key)) return;
  const auto& v = block.at(key);
  try {
    dst = v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config: ") + block_name + "." + key +
                      " has the wrong type (" + v.dump() + ")");
  }
}

void reject_unknown(const ordered_json& block, const char* block_name,
                    const std::set<std::string>& known) {
  for (auto it = block.begin(); it != block.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError(std::string("config: unknown key ") + block_name + "." +
                        it.key());
    }
  }
}

}  // namespace

RunConfig parse_config_json(const ordered_json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, "<top>", {"grid", "phys", "potential", "solver", "output",
                              "seed", "threads"});
  RunConfig cfg;
  if (j.contains("grid")) {
    const auto& b = j.at("grid");
    if (!b.is_object()) throw ConfigError("config: grid must be an object");
    reject_unknown(b, "grid", {"d", "n", "L"});
    read_field(b, "grid", "d", cfg.grid.d);
    read_field(b, "grid", "n", cfg.grid.n);
    read_field(b, "grid", "L", cfg.grid.L);
  }
  if (j.contains("phys")) {
    const auto& b = j.at("phys");
    if (!b.is_object()) throw ConfigError("config: phys must be an object");
    reject_unknown(b, "phys", {"s", "p", "c_over_c0"});
    read_field(b, "phys", "s", cfg.phys.s);
    read_field(b, "phys", "p", cfg.phys.p);
    read_field(b, "phys", "c_over_c0", cfg.phys.c_over_c0);
  }
  if (j.contains("potential")) {
    const auto& b = j.at("potential");
    if (!b.is_object()) throw ConfigError("config: potential must be an object");
    reject_unknown(b, "potential", {"family", "a0", "mu", "q"});
    read_field(b, "potential", "family", cfg.potential.family);
    read_field(b, "potential", "a0", cfg.potential.a0);
    read_field(b, "potential", "mu", cfg.potential.mu);
    read_field(b, "potential", "q", cfg.potential.q);
  }
  if (j.contains("solver")) {
    const auto& b = j.at("solver");
    if (!b.is_object()) throw ConfigError("config: solver must be an object");
    reject_unknown(b, "solver",
                   {"tol_grad", "tol_pohozaev", "max_iter", "h_max",
                    "linking_eps", "sampling_radial", "sampling_h", "petv_tol",
                    "petv_max_iter"});
    read_field(b, "solver", "tol_grad", cfg.solver.tol_grad);
    read_field(b, "solver", "tol_pohozaev", cfg.solver.tol_pohozaev);
    read_field(b, "solver", "max_iter", cfg.solver.max_iter);
    read_field(b, "solver", "h_max", cfg.solver.h_max);
    read_field(b, "solver", "linking_eps", cfg.solver.linking_eps);
    read_field(b, "solver", "sampling_radial", cfg.solver.sampling_radial);
    read_field(b, "solver", "sampling_h", cfg.solver.sampling_h);
    read_field(b, "solver", "petv_tol", cfg.solver.petv_tol);
    read_field(b, "solver", "petv_max_iter", cfg.solver.petv_max_iter);
  }
  if (j.contains("output")) {
    const auto& b = j.at("output");
    if (!b.is_object()) throw ConfigError("config: output must be an object");
    reject_unknown(b, "output", {"out", "report", "csv", "svg"});
    read_field(b, "output", "out", cfg.output.out);
    read_field(b, "output", "report", cfg.output.report);
    read_field(b, "output", "csv", cfg.output.csv);
    read_field(b, "output", "svg", cfg.output.svg);
  }
  read_field(j, "<top>", "seed", cfg.seed);
  read_field(j, "<top>", "threads", cfg.threads);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
  }
  return parse_config_json(j);
}

void validate_config(const RunConfig& cfg) {
  if (cfg.grid.d != 1 && cfg.grid.d != 2) {
    throw ConfigError("config: grid.d must be 1 or 2, got " + std::to_string(cfg.grid.d));
  }
  if (cfg.grid.n < 8 || (cfg.grid.n & (cfg.grid.n - 1)) != 0) {
    throw ConfigError("config: grid.n must be a power of two >= 8, got " +
                      std::to_string(cfg.grid.n));
  }
  if (!(cfg.grid.L > 0.0)) throw ConfigError("config: grid.L must be positive");
  if (!(cfg.phys.s > 0.0) || cfg.phys.s > 1.0) {
    throw ConfigError("config: phys.s must lie in (0, 1]");
  }
  if (!(cfg.phys.p > 2.0)) throw ConfigError("config: phys.p must exceed 2");
  if (!(cfg.phys.c_over_c0 > 0.0)) {
    throw ConfigError("config: phys.c_over_c0 must be positive");
  }
  if (!(cfg.solver.tol_grad > 0.0) || !(cfg.solver.tol_pohozaev > 0.0) ||
      !(cfg.solver.petv_tol > 0.0)) {
    throw ConfigError("config: solver tolerances must be positive");
  }
  if (cfg.solver.max_iter < 1 || cfg.solver.petv_max_iter < 1) {
    throw ConfigError("config: solver iteration limits must be >= 1");
  }
  if (!(cfg.solver.h_max > 0.0)) throw ConfigError("config: solver.h_max must be positive");
  if (!(cfg.solver.linking_eps > 0.0)) {
    throw ConfigError("config: solver.linking_eps must be positive");
  }
  if (cfg.solver.sampling_radial < 2 || cfg.solver.sampling_h < 2) {
    throw ConfigError("config: solver sampling densities must be >= 2");
  }
  if (cfg.threads < 1) throw ConfigError("config: threads must be >= 1");
  make_potential(cfg.potential);  // family-specific domain checks
}

Potential make_potential(const PotentialConfig& pc) {
  try {
    if (pc.family == "constant") return Potential::constant(pc.a0);
    if (pc.family == "inverse_power_well") {
      return Potential::inverse_power_well(pc.mu, pc.q);
    }
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: potential: ") + e.what());
  }
  throw ConfigError("config: unknown potential family \"" + pc.family +
                    "\" (expected constant | inverse_power_well)");
}

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["grid"] = {{"d", cfg.grid.d}, {"n", cfg.grid.n}, {"L", cfg.grid.L}};
  j["phys"] = {{"s", cfg.phys.s}, {"p", cfg.phys.p},
               {"c_over_c0", cfg.phys.c_over_c0}};
  ordered_json pot;
  pot["family"] = cfg.potential.family;
  if (cfg.potential.family == "constant") {
    pot["a0"] = cfg.potential.a0;
  } else {
    pot["mu"] = cfg.potential.mu;
    pot["q"] = cfg.potential.q;
  }
  j["potential"] = pot;
  j["solver"] = {{"tol_grad", cfg.solver.tol_grad},
                 {"tol_pohozaev", cfg.solver.tol_pohozaev},
                 {"max_iter", cfg.solver.max_iter},
                 {"h_max", cfg.solver.h_max},
                 {"linking_eps", cfg.solver.linking_eps},
                 {"sampling_radial", cfg.solver.sampling_radial},
                 {"sampling_h", cfg.solver.sampling_h},
                 {"petv_tol", cfg.solver.petv_tol},
                 {"petv_max_iter", cfg.solver.petv_max_iter}};
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

ordered_json report_skeleton(const std::string& tool, const RunConfig& cfg) {
  ordered_json rep;
  rep["schema"] = "fnls-report/1";
  rep["tool"] = tool;
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::tm tmv{};
  gmtime_r(&now, &tmv);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tmv);
  rep["generated_at"] = stamp;
  rep["config"] = config_to_json(cfg);
  return rep;
}

namespace {

void write_atomic(const std::string& path, const std::string& payload) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << payload;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const int err = errno;
    std::remove(tmp.c_str());
    throw std::runtime_error("rename " + tmp + " -> " + path + " failed: " +
                             std::strerror(err));
  }
}

}  // namespace

void write_report_atomic(const std::string& path, const ordered_json& report) {
  write_atomic(path, report.dump(2) + "\n");
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<IterRow>& rows) {
  std::ostringstream os;
  os << "iteration,reduced_value,tangent_res,pohozaev_res,lambda\n";
  os.precision(17);
  for (const IterRow& r : rows) {
    os << r.iteration << ',' << r.reduced_value << ',' << r.tangent_res << ','
       << r.pohozaev_res << ',' << r.lambda << '\n';
  }
  write_atomic(path, os.str());
}

ordered_json strip_volatile(const ordered_json& report) {
  ordered_json out = report;
  out.erase("generated_at");
  // "timing" blocks may sit at any level.
  std::function<void(ordered_json&)> scrub = [&scrub](ordered_json& node) {
    if (!node.is_object()) return;
    node.erase("timing");
    for (auto& el : node.items()) scrub(el.value());
  };
  scrub(out);
  return out;
}

}  // namespace fnls
