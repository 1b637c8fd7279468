#include "relaysim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/version.hpp"

namespace relaysim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

SchemeFilter parse_scheme(const std::string& v) {
  if (v == "all") return SchemeFilter::all;
  if (v == "lbrs") return SchemeFilter::lbrs;
  if (v == "cors") return SchemeFilter::cors;
  if (v == "cpors") return SchemeFilter::cpors;
  throw ConfigError("scheme must be one of lbrs|cors|cpors|all, got: " + v);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt(xs[i]);
  }
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

bool scheme_selected(SchemeFilter f, Scheme s) {
  switch (f) {
    case SchemeFilter::all:
      return true;
    case SchemeFilter::lbrs:
      return s == Scheme::lbrs;
    case SchemeFilter::cors:
      return s == Scheme::cors;
    case SchemeFilter::cpors:
      return s == Scheme::cpors;
  }
  return true;
}

std::vector<double> broadcast(const std::vector<double>& in, std::size_t n,
                              const char* what) {
  std::vector<double> out;
  if (in.empty()) {
    out.assign(n, 1.0);
  } else if (in.size() == 1) {
    out.assign(n, in[0]);
  } else if (in.size() >= n) {
    out.assign(in.begin(), in.begin() + static_cast<long>(n));
  } else {
    throw ConfigError(std::string(what) + ": need 1 or >= n_relays entries");
  }
  return out;
}

std::vector<double> linspace(double start, double stop, int points) {
  std::vector<double> out;
  if (points <= 0) throw ConfigError("sweep_points must be >= 1");
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(start + step * i);
  return out;
}

std::vector<double> logspace(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi > lo)) throw ConfigError("bad gamma grid bounds");
  std::vector<double> grid = linspace(std::log10(lo), std::log10(hi), points);
  for (double& g : grid) g = std::pow(10.0, g);
  return grid;
}

}  // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& raw) {
  const std::string line = trim(raw);
  if (line.empty() || line[0] == '#') return;
  const auto eq = line.find('=');
  if (eq == std::string::npos)
    throw ConfigError("expected 'key = value', got: " + line);
  const std::string key = trim(line.substr(0, eq));
  const std::string val = trim(line.substr(eq + 1));
  if (val.empty()) throw ConfigError("empty value for '" + key + "'");

  if (key == "input_bits") {
    cfg.task.input_bits = parse_double(key, val);
  } else if (key == "cycles_per_bit") {
    cfg.task.cycles_per_bit = parse_double(key, val);
  } else if (key == "compute_ratio") {
    cfg.task.compute_ratio = parse_double(key, val);
  } else if (key == "ps_db") {
    cfg.ps_db = parse_double(key, val);
  } else if (key == "pr_db") {
    cfg.pr_db = parse_double(key, val);
  } else if (key == "noise") {
    cfg.noise = parse_double(key, val);
  } else if (key == "bandwidth") {
    cfg.bandwidth = parse_double(key, val);
  } else if (key == "alpha") {
    cfg.pathloss_exp = parse_double(key, val);
  } else if (key == "deadline") {
    cfg.deadline = parse_double(key, val);
  } else if (key == "n_relays") {
    cfg.n_relays = parse_int(key, val);
  } else if (key == "dist_src") {
    cfg.dist_src = parse_list(key, val);
  } else if (key == "dist_dst") {
    cfg.dist_dst = parse_list(key, val);
  } else if (key == "cpu_freq_policy") {
    if (val != "uniform" && val != "explicit")
      throw ConfigError("cpu_freq_policy must be uniform|explicit");
    cfg.cpu_freq_policy = val;
  } else if (key == "cpu_freq_lo") {
    cfg.cpu_freq_lo = parse_double(key, val);
  } else if (key == "cpu_freq_hi") {
    cfg.cpu_freq_hi = parse_double(key, val);
  } else if (key == "cpu_freqs") {
    cfg.cpu_freqs = parse_list(key, val);
  } else if (key == "sweep_variable") {
    cfg.sweep.variable = val;
  } else if (key == "sweep_start") {
    cfg.sweep.start = parse_double(key, val);
  } else if (key == "sweep_stop") {
    cfg.sweep.stop = parse_double(key, val);
  } else if (key == "sweep_points") {
    cfg.sweep.points = parse_int(key, val);
  } else if (key == "sweep_scale") {
    cfg.sweep.scale = val;
  } else if (key == "trials") {
    cfg.trials = parse_u64(key, val);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, val);
  } else if (key == "quad_inner_tol") {
    cfg.quad_inner_tol = parse_double(key, val);
  } else if (key == "quad_outer_tol") {
    cfg.quad_outer_tol = parse_double(key, val);
  } else if (key == "scheme") {
    cfg.scheme = parse_scheme(val);
  } else if (key == "fig3_means") {
    cfg.fig3_means = parse_list(key, val);
  } else if (key == "fig3_n_start") {
    cfg.fig3_n_start = parse_int(key, val);
  } else if (key == "fig3_n_stop") {
    cfg.fig3_n_stop = parse_int(key, val);
  } else if (key == "gamma_lo") {
    cfg.gamma_lo = parse_double(key, val);
  } else if (key == "gamma_hi") {
    cfg.gamma_hi = parse_double(key, val);
  } else if (key == "gamma_points") {
    cfg.gamma_points = parse_int(key, val);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) apply_config_line(cfg, line);
  return cfg;
}

SystemConfig resolve_system(const ExperimentConfig& cfg, int population,
                            std::optional<int> n_override) {
  const int n_signed = n_override.value_or(cfg.n_relays);
  if (n_signed < 1) throw ConfigError("n_relays must be >= 1");
  const std::size_t n = static_cast<std::size_t>(n_signed);

  SystemConfig sys;
  sys.task = cfg.task;
  sys.noise = cfg.noise;
  sys.src_power = cfg.noise * db_to_linear(cfg.ps_db);
  sys.relay_power = cfg.noise * db_to_linear(cfg.pr_db);
  sys.bandwidth = cfg.bandwidth;
  sys.pathloss_exp = cfg.pathloss_exp;
  sys.deadline = cfg.deadline;

  const std::vector<double> ds = broadcast(cfg.dist_src, n, "dist_src");
  const std::vector<double> dd = broadcast(cfg.dist_dst, n, "dist_dst");

  std::vector<double> freqs(n);
  if (cfg.cpu_freq_policy == "explicit") {
    if (cfg.cpu_freqs.size() < n)
      throw ConfigError("cpu_freqs: need >= n_relays entries");
    std::copy_n(cfg.cpu_freqs.begin(), n, freqs.begin());
  } else {
    double lo = cfg.cpu_freq_lo;
    double hi = cfg.cpu_freq_hi;
    std::uint64_t stream = 0;
    if (population >= 0) {
      if (static_cast<std::size_t>(population) >= cfg.fig3_means.size())
        throw ConfigError("population index out of range");
      const double mean = cfg.fig3_means[static_cast<std::size_t>(population)];
      lo = 0.5 * mean;
      hi = 1.5 * mean;
      stream = static_cast<std::uint64_t>(population) + 1;
    }
    if (!(hi > lo) || !(lo > 0)) throw ConfigError("bad cpu frequency range");
    // Relay i's clock depends only on (seed, population, i): growing the
    // relay list never redraws existing relays.
    for (std::size_t i = 0; i < n; ++i) {
      const double u =
          rng::uniform_open(cfg.seed, stream, static_cast<std::uint32_t>(i),
                            rng::kDomainCpuFreq);
      freqs[i] = lo + (hi - lo) * u;
    }
  }

  sys.relays.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sys.relays[i] = {freqs[i], ds[i], dd[i]};
  }
  sys.validate();
  return sys;
}

namespace {

std::vector<double> relay_freqs(const SystemConfig& sys) {
  std::vector<double> f;
  f.reserve(sys.n_relays());
  for (const RelayNode& r : sys.relays) f.push_back(r.cpu_freq);
  return f;
}

std::vector<double> relay_dists(const SystemConfig& sys, bool src) {
  std::vector<double> d;
  d.reserve(sys.n_relays());
  for (const RelayNode& r : sys.relays)
    d.push_back(src ? r.dist_src : r.dist_dst);
  return d;
}

void write_header(std::ostream& out, const char* experiment,
                  const ExperimentConfig& cfg) {
  out << "# relaysim " << kVersion << "\n";
  out << "# experiment = " << experiment << "\n";
  out << "# seed = " << cfg.seed << "\n";
  out << "# trials = " << cfg.trials << "\n";
  out << "# input_bits = " << fmt(cfg.task.input_bits) << "\n";
  out << "# cycles_per_bit = " << fmt(cfg.task.cycles_per_bit) << "\n";
  out << "# compute_ratio = " << fmt(cfg.task.compute_ratio) << "\n";
  out << "# ps_db = " << fmt(cfg.ps_db) << "\n";
  out << "# pr_db = " << fmt(cfg.pr_db) << "\n";
  out << "# noise = " << fmt(cfg.noise) << "\n";
  out << "# bandwidth = " << fmt(cfg.bandwidth) << "\n";
  out << "# alpha = " << fmt(cfg.pathloss_exp) << "\n";
  out << "# deadline = " << fmt(cfg.deadline) << "\n";
  out << "# n_relays = " << cfg.n_relays << "\n";
  out << "# cpu_freq_policy = " << cfg.cpu_freq_policy << "\n";
  out << "# quad_inner_tol = " << fmt(cfg.quad_inner_tol) << "\n";
  out << "# quad_outer_tol = " << fmt(cfg.quad_outer_tol) << "\n";
}

void write_resolved_relays(std::ostream& out, const SystemConfig& sys) {
  out << "# cpu_freqs = " << fmt_list(relay_freqs(sys)) << "\n";
  out << "# dist_src = " << fmt_list(relay_dists(sys, true)) << "\n";
  out << "# dist_dst = " << fmt_list(relay_dists(sys, false)) << "\n";
}

void write_columns(std::ostream& out) {
  out << "# columns: sweep_value,scheme,method,p_out,ci_low,ci_high,n_trials,"
         "seed\n";
}

void write_row(std::ostream& out, const CurveRow& row) {
  out << fmt(row.sweep_value) << ',' << to_string(row.scheme) << ','
      << to_string(row.method) << ',' << fmt(row.p_out) << ','
      << fmt(row.ci_low) << ',' << fmt(row.ci_high) << ',' << row.n_trials
      << ',' << row.seed << '\n';
}

CurveRow mc_row(double sweep_value, const OutageResult& r) {
  return {sweep_value, r.scheme,  r.method,   r.p_hat,
          r.ci_low,    r.ci_high, r.n_trials, r.master_seed};
}

// Analytic rows carry the value in all three probability columns; a
// quadrature failure is recorded as NaN rather than aborting the sweep.
CurveRow analytic_row(double sweep_value, Scheme scheme, Method method,
                      double value, std::uint64_t seed) {
  return {sweep_value, scheme, method, value, value, value, 0, seed};
}

double analytic_or_nan(const SystemConfig& sys, Scheme scheme,
                       const AnalyticOptions& opts) {
  try {
    return analytic_outage(sys, scheme, opts);
  } catch (const QuadratureError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void emit_point(std::ostream& out, const ExperimentConfig& cfg,
                const SystemConfig& sys, double sweep_value) {
  const std::array<OutageResult, 3> mc =
      estimate_all_schemes_shared_draws(sys, cfg.trials, cfg.seed);
  const AnalyticOptions opts = cfg.quad_options();
  for (const OutageResult& r : mc) {
    if (scheme_selected(cfg.scheme, r.scheme))
      write_row(out, mc_row(sweep_value, r));
  }
  if (scheme_selected(cfg.scheme, Scheme::lbrs)) {
    write_row(out, analytic_row(sweep_value, Scheme::lbrs, Method::analytic,
                                analytic_or_nan(sys, Scheme::lbrs, opts),
                                cfg.seed));
  }
  if (scheme_selected(cfg.scheme, Scheme::cors)) {
    write_row(out,
              analytic_row(sweep_value, Scheme::cors,
                           Method::analytic_upper_bound,
                           cors_outage_upper_bound(sys), cfg.seed));
  }
  if (scheme_selected(cfg.scheme, Scheme::cpors)) {
    write_row(out, analytic_row(sweep_value, Scheme::cpors, Method::analytic,
                                analytic_or_nan(sys, Scheme::cpors, opts),
                                cfg.seed));
  }
}

}  // namespace

void run_fig2(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.sweep.variable != "pr_db" && cfg.sweep.variable != "ps_db")
    throw ConfigError("fig2 sweeps pr_db or ps_db");
  if (cfg.sweep.scale != "dB" && cfg.sweep.scale != "linear")
    throw ConfigError("fig2 sweep scale must be dB or linear");

  const SystemConfig base = resolve_system(cfg);
  write_header(out, "fig2", cfg);
  write_resolved_relays(out, base);
  out << "# sweep = " << cfg.sweep.variable << " " << fmt(cfg.sweep.start)
      << ".." << fmt(cfg.sweep.stop) << " points=" << cfg.sweep.points
      << " scale=" << cfg.sweep.scale << "\n";
  write_columns(out);

  for (const double v : linspace(cfg.sweep.start, cfg.sweep.stop,
                                 cfg.sweep.points)) {
    SystemConfig sys = base;
    const double linear =
        cfg.sweep.scale == "dB" ? db_to_linear(v) : v;
    if (cfg.sweep.variable == "pr_db") {
      sys.relay_power = cfg.noise * linear;
    } else {
      sys.src_power = cfg.noise * linear;
    }
    emit_point(out, cfg, sys, v);
  }
  out.flush();
  if (!out) throw std::runtime_error("fig2: write failure");
}

void run_fig3(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.fig3_n_start < 1 || cfg.fig3_n_stop < cfg.fig3_n_start)
    throw ConfigError("fig3: need 1 <= fig3_n_start <= fig3_n_stop");
  write_header(out, "fig3", cfg);
  out << "# fig3_means = " << fmt_list(cfg.fig3_means) << "\n";
  out << "# fig3_n = " << cfg.fig3_n_start << ".." << cfg.fig3_n_stop << "\n";
  write_columns(out);

  for (std::size_t pop = 0; pop < cfg.fig3_means.size(); ++pop) {
    const SystemConfig widest =
        resolve_system(cfg, static_cast<int>(pop), cfg.fig3_n_stop);
    out << "# population " << pop << ": mean = " << fmt(cfg.fig3_means[pop])
        << ", cpu_freqs = " << fmt_list(relay_freqs(widest)) << "\n";
    for (int n = cfg.fig3_n_start; n <= cfg.fig3_n_stop; ++n) {
      const SystemConfig sys = resolve_system(cfg, static_cast<int>(pop), n);
      emit_point(out, cfg, sys, static_cast<double>(n));
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("fig3: write failure");
}

void run_diversity(const ExperimentConfig& cfg, std::ostream& out) {
  const SystemConfig base = resolve_system(cfg);
  const std::vector<double> grid =
      logspace(cfg.gamma_lo, cfg.gamma_hi, cfg.gamma_points);
  const AnalyticOptions opts = cfg.quad_options();

  write_header(out, "diversity", cfg);
  write_resolved_relays(out, base);
  out << "# gamma_grid = " << fmt_list(grid) << "\n";

  const EligibilityView elig = eligibility(base);
  const std::size_t best = cpors_index(base);

  out << "# fit columns: scheme,slope,predicted_order,residual,degenerate,"
         "pass\n";
  struct FitLine {
    Scheme scheme;
    DiversityFit fit;
    double predicted;
    double tolerance;
  };
  std::vector<FitLine> fits;
  for (const Scheme s : {Scheme::lbrs, Scheme::cors, Scheme::cpors}) {
    if (!scheme_selected(cfg.scheme, s)) continue;
    const double predicted =
        s == Scheme::cpors
            ? (elig.phi_margins[best] > 0 ? 1.0 : 0.0)
            : static_cast<double>(elig.phi_set.size());
    const double tol = s == Scheme::cpors ? 0.1 : 0.3;
    fits.push_back({s, diversity_order(base, s, grid, opts), predicted, tol});
  }
  for (const FitLine& f : fits) {
    const bool pass = std::abs(f.fit.slope - f.predicted) <= f.tolerance;
    out << to_string(f.scheme) << ',' << fmt(f.fit.slope) << ','
        << fmt(f.predicted) << ',' << fmt(f.fit.fit_residual) << ','
        << (f.fit.degenerate ? 1 : 0) << ',' << (pass ? 1 : 0) << '\n';
  }

  out << "# curve columns: gamma,scheme,method,p_out\n";
  const double gamma_norm =
      base.noise / pathloss_gain(base.relays[0].dist_src, base.pathloss_exp);
  for (const FitLine& f : fits) {
    const Method method = f.scheme == Scheme::cors
                              ? Method::analytic_upper_bound
                              : Method::analytic;
    for (std::size_t i = 0; i < f.fit.gamma_grid.size(); ++i) {
      out << fmt(f.fit.gamma_grid[i]) << ',' << to_string(f.scheme) << ','
          << to_string(method) << ',' << fmt(std::exp(f.fit.log_outage[i]))
          << '\n';
    }
    if (f.scheme == Scheme::cors) {
      // High-SNR power law next to the bound it approximates.
      for (const double gamma : f.fit.gamma_grid) {
        SystemConfig sys = base;
        sys.src_power = gamma * gamma_norm;
        sys.relay_power = gamma * gamma_norm;
        out << fmt(gamma) << ',' << to_string(f.scheme) << ','
            << to_string(Method::asymptotic) << ','
            << fmt(cors_asymptotic_outage(sys, gamma)) << '\n';
      }
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("diversity: write failure");
}

void run_point(const ExperimentConfig& cfg, std::ostream& out) {
  const SystemConfig sys = resolve_system(cfg);
  write_header(out, "point", cfg);
  write_resolved_relays(out, sys);
  write_columns(out);
  emit_point(out, cfg, sys, cfg.pr_db);
  out.flush();
  if (!out) throw std::runtime_error("point: write failure");
}

}  // namespace relaysim
