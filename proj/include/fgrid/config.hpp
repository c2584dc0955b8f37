#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fgrid/gridding.hpp"
#include "fgrid/sampling.hpp"
#include "fgrid/window.hpp"

namespace fgrid {

enum class Task { sample, dcf, reconstruct, convergence, edges };
enum class FunctionId { ex41, ex42, none }; // none: samples come from a data file
enum class Method { fa, cg, fcg };
enum class RPolicy { fixed, log2, full };
enum class DcfKind { trapezoid, frame };
enum class EpsPolicy { constant, power };

// Everything an experiment run depends on. The textual form produced by
// to_string round-trips losslessly through parse_config and is embedded in
// every output file as provenance.
struct ExperimentConfig {
  Task task = Task::reconstruct;
  FunctionId function = FunctionId::ex41;
  std::string data; // optional three-column sample file
  SamplingKind sampling = SamplingKind::jittered;
  int n = 32;
  double theta = 0.25;
  double v = 1.0;
  WindowKind window = WindowKind::exponential;
  double window_a = 5e-5;
  Method method = Method::fcg;
  RPolicy r_policy = RPolicy::log2;
  int r = 1;
  double m_factor = 1.0;
  int grid = 0; // 0: max(1024, 4(2m+1))
  std::uint64_t seed = 0;
  std::optional<double> q; // nullopt: full kernel
  FilterSpec filter;
  double noise_sigma = 0.0;
  bool dcf_real = false;
  EpsPolicy eps_policy = EpsPolicy::constant;
  double eps_c = 0.02;
  double eps_gamma = 0.0;
  double bump_b = 5.0;
  double threshold = 0.3;
  double min_jump = 0.25;
  DcfKind dcf_kind = DcfKind::frame;
  std::vector<int> n_list = {16, 32, 64, 128};

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline std::string task_token(Task t) {
  switch (t) {
    case Task::sample: return "sample";
    case Task::dcf: return "dcf";
    case Task::reconstruct: return "reconstruct";
    case Task::convergence: return "convergence";
    case Task::edges: return "edges";
  }
  return "reconstruct";
}

inline Task task_from(const std::string& s) {
  if (s == "sample") return Task::sample;
  if (s == "dcf") return Task::dcf;
  if (s == "reconstruct") return Task::reconstruct;
  if (s == "convergence") return Task::convergence;
  if (s == "edges") return Task::edges;
  throw std::invalid_argument("unknown task: " + s);
}

inline std::map<std::string, std::string> parse_kv(const std::string& spec, char sep) {
  std::map<std::string, std::string> out;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value, got: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

inline double to_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument(what + ": not a number: " + s);
  return x;
}

inline int to_int(const std::string& s, const std::string& what) {
  const double x = to_double(s, what);
  const int i = int(x);
  if (double(i) != x) throw std::invalid_argument(what + ": not an integer: " + s);
  return i;
}

} // namespace detail

// "jittered:n=200,theta=0.25" | "log:n=128,v=1" | "uniform:n=32"
inline void parse_sampling_spec(const std::string& spec, ExperimentConfig& cfg) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  cfg.sampling = sampling_kind_from_token(kind);
  if (colon == std::string::npos) {
    if (cfg.sampling != SamplingKind::custom)
      throw std::invalid_argument("sampling: missing parameters in: " + spec);
    return;
  }
  for (const auto& [key, val] : detail::parse_kv(spec.substr(colon + 1), ',')) {
    if (key == "n") cfg.n = detail::to_int(val, "sampling n");
    else if (key == "theta") cfg.theta = detail::to_double(val, "sampling theta");
    else if (key == "v") cfg.v = detail::to_double(val, "sampling v");
    else throw std::invalid_argument("sampling: unknown key: " + key);
  }
}

inline std::string sampling_spec(const ExperimentConfig& cfg) {
  switch (cfg.sampling) {
    case SamplingKind::uniform: return "uniform:n=" + std::to_string(cfg.n);
    case SamplingKind::jittered:
      return "jittered:n=" + std::to_string(cfg.n) + ",theta=" + detail::fmt17(cfg.theta);
    case SamplingKind::logarithmic:
      return "log:n=" + std::to_string(cfg.n) + ",v=" + detail::fmt17(cfg.v);
    case SamplingKind::custom: return "custom";
  }
  return "uniform:n=" + std::to_string(cfg.n);
}

// "exp:a=5e-05" | "const"
inline void parse_window_spec(const std::string& spec, ExperimentConfig& cfg) {
  if (spec == "const") {
    cfg.window = WindowKind::constant;
    return;
  }
  if (spec.rfind("exp:", 0) == 0) {
    cfg.window = WindowKind::exponential;
    const auto kv = detail::parse_kv(spec.substr(4), ',');
    const auto it = kv.find("a");
    if (it == kv.end()) throw std::invalid_argument("window: exp requires a=<real>");
    cfg.window_a = detail::to_double(it->second, "window a");
    return;
  }
  throw std::invalid_argument("unknown window spec: " + spec);
}

inline std::string window_spec(const ExperimentConfig& cfg) {
  if (cfg.window == WindowKind::constant) return "const";
  return "exp:a=" + detail::fmt17(cfg.window_a);
}

// "3" | "log2" | "full"
inline void parse_r_spec(const std::string& spec, ExperimentConfig& cfg) {
  if (spec == "log2") {
    cfg.r_policy = RPolicy::log2;
    return;
  }
  if (spec == "full") {
    cfg.r_policy = RPolicy::full;
    return;
  }
  cfg.r_policy = RPolicy::fixed;
  cfg.r = detail::to_int(spec, "r");
  if (cfg.r < 1) throw std::invalid_argument("r must be >= 1");
}

inline std::string r_spec(const ExperimentConfig& cfg) {
  if (cfg.r_policy == RPolicy::log2) return "log2";
  if (cfg.r_policy == RPolicy::full) return "full";
  return std::to_string(cfg.r);
}

// "none" | "exp:p=2,c=36"
inline void parse_filter_spec(const std::string& spec, ExperimentConfig& cfg) {
  if (spec == "none") {
    cfg.filter = FilterSpec{};
    return;
  }
  if (spec.rfind("exp:", 0) == 0) {
    cfg.filter.kind = FilterSpec::Kind::exponential;
    for (const auto& [key, val] : detail::parse_kv(spec.substr(4), ',')) {
      if (key == "p") cfg.filter.order = detail::to_int(val, "filter p");
      else if (key == "c") cfg.filter.strength = detail::to_double(val, "filter c");
      else throw std::invalid_argument("filter: unknown key: " + key);
    }
    if (cfg.filter.order < 1) throw std::invalid_argument("filter: p must be >= 1");
    return;
  }
  throw std::invalid_argument("unknown filter spec: " + spec);
}

inline std::string filter_spec(const ExperimentConfig& cfg) {
  if (cfg.filter.kind == FilterSpec::Kind::none) return "none";
  return "exp:p=" + std::to_string(cfg.filter.order) +
         ",c=" + detail::fmt17(cfg.filter.strength);
}

// "const:0.02" | "power:1,0.5"  (power: eps_n = c n^{-gamma})
inline void parse_eps_spec(const std::string& spec, ExperimentConfig& cfg) {
  if (spec.rfind("const:", 0) == 0) {
    cfg.eps_policy = EpsPolicy::constant;
    cfg.eps_c = detail::to_double(spec.substr(6), "eps");
    cfg.eps_gamma = 0.0;
    return;
  }
  if (spec.rfind("power:", 0) == 0) {
    const std::string rest = spec.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("eps power policy needs c,gamma");
    cfg.eps_policy = EpsPolicy::power;
    cfg.eps_c = detail::to_double(rest.substr(0, comma), "eps c");
    cfg.eps_gamma = detail::to_double(rest.substr(comma + 1), "eps gamma");
    return;
  }
  throw std::invalid_argument("unknown eps policy: " + spec);
}

inline std::string eps_spec(const ExperimentConfig& cfg) {
  if (cfg.eps_policy == EpsPolicy::constant) return "const:" + detail::fmt17(cfg.eps_c);
  return "power:" + detail::fmt17(cfg.eps_c) + "," + detail::fmt17(cfg.eps_gamma);
}

// "gaussian:b=5"
inline void parse_bump_spec(const std::string& spec, ExperimentConfig& cfg) {
  if (spec.rfind("gaussian:", 0) != 0)
    throw std::invalid_argument("unknown bump spec: " + spec);
  const auto kv = detail::parse_kv(spec.substr(9), ',');
  const auto it = kv.find("b");
  if (it == kv.end()) throw std::invalid_argument("bump: gaussian requires b=<real>");
  cfg.bump_b = detail::to_double(it->second, "bump b");
  if (!(cfg.bump_b > 0.0)) throw std::invalid_argument("bump: b must be positive");
}

inline std::string bump_spec(const ExperimentConfig& cfg) {
  return "gaussian:b=" + detail::fmt17(cfg.bump_b);
}

inline std::string to_string(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "task=" << detail::task_token(c.task);
  os << ";function="
     << (c.function == FunctionId::ex41 ? "ex41"
                                        : c.function == FunctionId::ex42 ? "ex42" : "none");
  os << ";data=" << c.data;
  os << ";sampling=" << sampling_spec(c);
  os << ";window=" << window_spec(c);
  os << ";method="
     << (c.method == Method::fa ? "fa" : c.method == Method::cg ? "cg" : "fcg");
  os << ";r=" << r_spec(c);
  os << ";mfactor=" << detail::fmt17(c.m_factor);
  os << ";grid=" << c.grid;
  os << ";seed=" << c.seed;
  os << ";q=" << (c.q ? detail::fmt17(*c.q) : std::string("full"));
  os << ";filter=" << filter_spec(c);
  os << ";noise=" << detail::fmt17(c.noise_sigma);
  os << ";dcfreal=" << (c.dcf_real ? 1 : 0);
  os << ";eps=" << eps_spec(c);
  os << ";bump=" << bump_spec(c);
  os << ";threshold=" << detail::fmt17(c.threshold);
  os << ";minjump=" << detail::fmt17(c.min_jump);
  os << ";dcfkind=" << (c.dcf_kind == DcfKind::trapezoid ? "trapezoid" : "frame");
  os << ";nlist=";
  for (std::size_t i = 0; i < c.n_list.size(); ++i)
    os << (i ? "," : "") << c.n_list[i];
  return os.str();
}

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  c.n_list.clear();
  for (const auto& [key, val] : detail::parse_kv(text, ';')) {
    if (key == "task") c.task = detail::task_from(val);
    else if (key == "function") {
      if (val == "ex41") c.function = FunctionId::ex41;
      else if (val == "ex42") c.function = FunctionId::ex42;
      else if (val == "none") c.function = FunctionId::none;
      else throw std::invalid_argument("unknown function: " + val);
    } else if (key == "data") c.data = val;
    else if (key == "sampling") parse_sampling_spec(val, c);
    else if (key == "window") parse_window_spec(val, c);
    else if (key == "method") {
      if (val == "fa") c.method = Method::fa;
      else if (val == "cg") c.method = Method::cg;
      else if (val == "fcg") c.method = Method::fcg;
      else throw std::invalid_argument("unknown method: " + val);
    } else if (key == "r") parse_r_spec(val, c);
    else if (key == "mfactor") c.m_factor = detail::to_double(val, "mfactor");
    else if (key == "grid") c.grid = detail::to_int(val, "grid");
    else if (key == "seed") c.seed = std::stoull(val);
    else if (key == "q") {
      if (val == "full") c.q.reset();
      else c.q = detail::to_double(val, "q");
    } else if (key == "filter") parse_filter_spec(val, c);
    else if (key == "noise") c.noise_sigma = detail::to_double(val, "noise");
    else if (key == "dcfreal") c.dcf_real = detail::to_int(val, "dcfreal") != 0;
    else if (key == "eps") parse_eps_spec(val, c);
    else if (key == "bump") parse_bump_spec(val, c);
    else if (key == "threshold") c.threshold = detail::to_double(val, "threshold");
    else if (key == "minjump") c.min_jump = detail::to_double(val, "minjump");
    else if (key == "dcfkind") {
      if (val == "trapezoid") c.dcf_kind = DcfKind::trapezoid;
      else if (val == "frame") c.dcf_kind = DcfKind::frame;
      else throw std::invalid_argument("unknown dcf kind: " + val);
    } else if (key == "nlist") {
      std::istringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) c.n_list.push_back(detail::to_int(item, "nlist"));
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  return c;
}

// Bandwidth actually used for a given half-count n.
inline int resolve_r(const ExperimentConfig& cfg, int n) {
  switch (cfg.r_policy) {
    case RPolicy::fixed:
      if (cfg.r > n + 1)
        throw std::invalid_argument("r exceeds n+1 (full bandwidth)");
      return cfg.r;
    case RPolicy::log2:
      return std::max(1, int(std::ceil(std::log2(double(n)))));
    case RPolicy::full:
      return n + 1;
  }
  return 1;
}

// eps_n under the configured policy.
inline double resolve_epsilon(const ExperimentConfig& cfg, int n) {
  if (cfg.eps_policy == EpsPolicy::constant) return cfg.eps_c;
  return cfg.eps_c * std::pow(double(n), -cfg.eps_gamma);
}

} // namespace fgrid
