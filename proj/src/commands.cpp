#include "jtberry/commands.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "jtberry/perturb.hpp"
#include "jtberry/rotor.hpp"
#include "jtberry/vibronic.hpp"

namespace jtberry {

namespace {

JTModel model_from_config(RunConfig& cfg) {
  std::string name = cfg.get_string("model");
  double F = cfg.get_double("F", 1.0);
  double omega = cfg.get_double("omega", 1.0);
  return build_model(name, F, omega);
}

Vector default_base(const JTModel& m) {
  Vector b = Vector::Zero(m.N - 1);
  for (int i = 0; i + 1 < m.N - 1; ++i) b[i] = std::numbers::pi / 2;
  return b;
}

LoopKind parse_kind(const std::string& s) {
  if (s == "contractible") return LoopKind::contractible;
  if (s == "nontrivial") return LoopKind::nontrivial;
  throw ConfigError("loop.kind must be 'contractible' or 'nontrivial', got '" +
                    s + "'");
}

LoopPath loop_from_config(RunConfig& cfg, const TroughSpec& spec) {
  LoopKind kind = parse_kind(cfg.get_string("loop.kind", "nontrivial"));
  int steps = static_cast<int>(cfg.get_int("loop.steps", 256));
  Vector base;
  if (cfg.has("loop.base")) {
    std::vector<double> v = cfg.get_doubles("loop.base");
    base = Eigen::Map<Vector>(v.data(), v.size());
  } else {
    base = default_base(spec.model);
  }
  return make_loop(spec, kind, base, steps);
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

std::string transport_csv(const TransportRecord& rec) {
  std::ostringstream csv;
  int n = static_cast<int>(rec.transported.front().size());
  csv << "# schema=" << kSchemaVersion << " columns=step,t";
  for (int i = 1; i <= n; ++i) csv << ",c" << i;
  csv << "\n";
  std::size_t S = rec.transported.size() - 1;
  for (std::size_t s = 0; s < rec.transported.size(); ++s) {
    csv << s << "," << format_double(static_cast<double>(s) / S);
    for (int i = 0; i < n; ++i)
      csv << "," << format_double(rec.transported[s][i]);
    csv << "\n";
  }
  return csv.str();
}

}  // namespace

CommandResult cmd_model_info(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  cfg.reject_unknown();
  Json payload;
  payload["name"] = m.name;
  payload["N"] = m.N;
  payload["M"] = m.M;
  payload["F"] = m.F;
  payload["omega"] = m.omega;
  payload["trace_orthogonality_constant"] = m.c;
  Json checks = Json::array();
  for (const Matrix& V : m.V)
    checks.push_back({{"frobenius", V.norm()}, {"entry_sum", V.sum()}});
  payload["coupling_checksums"] = checks;
  if (m.F > 0) {
    TroughSpec spec = find_trough(m);
    payload["Qstar"] = spec.Qstar;
    payload["Emin"] = spec.Emin;
  }
  return {make_envelope(cfg, "model-info", payload, !opt.no_timestamp), {}};
}

CommandResult cmd_trough(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  int samples = static_cast<int>(cfg.get_int("trough.samples", 64));
  cfg.reject_unknown();
  TroughSpec spec = find_trough(m);
  PatternReport rep = verify_trough_spectrum(m, spec.Q_M);

  // Energy isotropy over seeded random trough points.
  std::mt19937 rng(opt.seed);
  std::uniform_real_distribution<double> uni(0.0, std::numbers::pi);
  double lo = spec.Emin, hi = spec.Emin;
  for (int i = 0; i < samples; ++i) {
    Vector th(m.N - 1);
    for (int j = 0; j < m.N - 1; ++j)
      th[j] = (j == m.N - 2) ? 2 * uni(rng) : uni(rng);
    double e = apes(m, trough_point(spec, th).Q)[0];
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  Json payload;
  payload["Qstar"] = spec.Qstar;
  payload["Emin"] = spec.Emin;
  payload["x_value"] = rep.x_value;
  payload["ratios"] = vector_json(rep.ratios);
  payload["is_pattern"] = rep.is_pattern;
  payload["isotropy_spread"] = (hi - lo) / std::max(1.0, std::abs(spec.Emin));
  payload["samples"] = samples;
  return {make_envelope(cfg, "trough", payload, !opt.no_timestamp), {}};
}

CommandResult cmd_berry(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  TroughSpec spec = find_trough(m);
  LoopPath path = loop_from_config(cfg, spec);
  cfg.reject_unknown();
  HolonomyResult res = subspace_holonomy(m, path);
  TransportRecord rec = transport_ground(m, path);
  Json payload;
  payload["phase_raw"] = res.gamma0_raw;
  payload["phase"] = res.gamma0;
  payload["min_gap"] = res.min_gap;
  payload["steps"] = res.steps;
  payload["min_step_overlap"] = res.min_step_overlap;
  payload["flipped_count"] = res.flipped_count;
  payload["W_det"] = res.W.determinant();
  CommandResult out;
  out.envelope = make_envelope(cfg, "berry", payload, !opt.no_timestamp);
  out.csv_files["berry_transport.csv"] = transport_csv(rec);
  return out;
}

CommandResult cmd_holonomy(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  TroughSpec spec = find_trough(m);
  LoopPath path = loop_from_config(cfg, spec);
  cfg.reject_unknown();
  HolonomyResult res = subspace_holonomy(m, path);
  Json payload;
  payload["phase_raw"] = res.gamma0_raw;
  payload["phase"] = res.gamma0;
  payload["min_gap"] = res.min_gap;
  payload["steps"] = res.steps;
  payload["flipped_count"] = res.flipped_count;
  payload["W_det"] = res.W.determinant();
  Json W = Json::array();
  for (int i = 0; i < res.W.rows(); ++i) W.push_back(vector_json(res.W.row(i)));
  payload["W"] = W;
  return {make_envelope(cfg, "holonomy", payload, !opt.no_timestamp), {}};
}

CommandResult cmd_vibronic(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  int n_max = static_cast<int>(cfg.get_int("vibronic.n_max"));
  int k = static_cast<int>(cfg.get_int("vibronic.k", m.N + 2));
  double tol = cfg.get_double("vibronic.tol", kDefaultVibronicTol);
  std::int64_t max_dim = cfg.get_int("vibronic.max_dim", kDefaultDimBudget);
  cfg.reject_unknown();
  VibronicSpectrum spec = low_spectrum(m, n_max, k, tol, max_dim);
  Json payload;
  payload["levels"] = spec.levels;
  payload["degeneracies"] = spec.degeneracies;
  payload["ground_degeneracy"] = spec.degeneracies.front();
  payload["n_max"] = spec.n_max;
  payload["converged"] = spec.converged;
  payload["ground_shift"] = spec.ground_shift;
  CommandResult out;
  out.envelope = make_envelope(cfg, "vibronic", payload, !opt.no_timestamp);
  std::ostringstream csv;
  csv << "# schema=" << kSchemaVersion << " columns=index,energy,cluster\n";
  int cluster = 0, within = 0;
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    if (within == spec.degeneracies[cluster]) {
      ++cluster;
      within = 0;
    }
    ++within;
    csv << i << "," << format_double(spec.levels[i]) << "," << cluster << "\n";
  }
  out.csv_files["vibronic_levels.csv"] = csv.str();
  return out;
}

CommandResult cmd_rotor(RunConfig& cfg, const CliOptions& opt) {
  int N = static_cast<int>(cfg.get_int("rotor.N"));
  std::string ps = cfg.get_string("rotor.parity", "odd");
  int k = static_cast<int>(cfg.get_int("rotor.k", 5));
  cfg.reject_unknown();
  RotorParity parity;
  if (ps == "even")
    parity = RotorParity::even;
  else if (ps == "odd" || ps == "antiperiodic")
    parity = RotorParity::odd;
  else if (ps == "both")
    parity = RotorParity::both;
  else
    throw ConfigError("rotor.parity must be even|odd|antiperiodic|both");
  RotorSpectrum spec = rotor_spectrum(N, parity, k);
  Json payload;
  payload["N"] = spec.N;
  payload["parity"] = ps;
  Json levels = Json::array();
  for (const RotorLevel& l : spec.levels)
    levels.push_back({{"L", l.L}, {"energy", l.energy},
                      {"degeneracy", l.degeneracy}});
  payload["levels"] = levels;
  CommandResult out;
  out.envelope = make_envelope(cfg, "rotor", payload, !opt.no_timestamp);
  std::ostringstream csv;
  csv << "# schema=" << kSchemaVersion << " columns=L,energy,degeneracy\n";
  for (const RotorLevel& l : spec.levels)
    csv << format_double(l.L) << "," << format_double(l.energy) << ","
        << l.degeneracy << "\n";
  out.csv_files["rotor_levels.csv"] = csv.str();
  return out;
}

CommandResult cmd_apes_scan(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  Geometry d1, d2;
  if (cfg.has("scan.dir1") || cfg.has("scan.dir2")) {
    std::vector<double> v1 = cfg.get_doubles("scan.dir1");
    std::vector<double> v2 = cfg.get_doubles("scan.dir2");
    if (static_cast<int>(v1.size()) != m.M ||
        static_cast<int>(v2.size()) != m.M)
      throw ConfigError("scan directions must have M entries");
    d1 = Eigen::Map<Geometry>(v1.data(), v1.size());
    d2 = Eigen::Map<Geometry>(v2.data(), v2.size());
    if (std::abs(d1.norm() - 1) > 1e-9 || std::abs(d2.norm() - 1) > 1e-9 ||
        std::abs(d1.dot(d2)) > 1e-9)
      throw ConfigError("scan directions must be orthonormal");
  } else {
    int a1 = static_cast<int>(cfg.get_int("scan.axis1", 1));
    int a2 = static_cast<int>(cfg.get_int("scan.axis2", m.M));
    if (a1 < 1 || a1 > m.M || a2 < 1 || a2 > m.M || a1 == a2)
      throw ConfigError("scan axes must be distinct mode indices in 1..M");
    d1 = Geometry::Zero(m.M);
    d2 = Geometry::Zero(m.M);
    d1[a1 - 1] = 1.0;
    d2[a2 - 1] = 1.0;
  }
  double extent = cfg.get_double("scan.extent", 2.0);
  int res = static_cast<int>(cfg.get_int("scan.resolution", 101));
  cfg.reject_unknown();
  if (res < 2) throw ConfigError("scan.resolution must be >= 2");

  std::ostringstream csv;
  csv << "# schema=" << kSchemaVersion << " columns=u,v";
  for (int i = 1; i <= m.N; ++i) csv << ",apes" << i;
  csv << "\n";
  double vmin = std::numeric_limits<double>::infinity();
  double umin = 0, wmin = 0;
  for (int i = 0; i < res; ++i) {
    double u = -extent + 2 * extent * i / (res - 1);
    for (int j = 0; j < res; ++j) {
      double v = -extent + 2 * extent * j / (res - 1);
      Vector e = apes(m, u * d1 + v * d2);
      csv << format_double(u) << "," << format_double(v);
      for (int n = 0; n < m.N; ++n) csv << "," << format_double(e[n]);
      csv << "\n";
      if (e[0] < vmin) {
        vmin = e[0];
        umin = u;
        wmin = v;
      }
    }
  }
  Json payload;
  payload["resolution"] = res;
  payload["extent"] = extent;
  payload["min_value"] = vmin;
  payload["min_u"] = umin;
  payload["min_v"] = wmin;
  CommandResult out;
  out.envelope = make_envelope(cfg, "apes-scan", payload, !opt.no_timestamp);
  out.csv_files["apes_scan.csv"] = csv.str();
  return out;
}

CommandResult cmd_perturb_scan(RunConfig& cfg, const CliOptions& opt) {
  JTModel m = model_from_config(cfg);
  std::string type = cfg.get_string("perturb.type");
  std::vector<double> grid = cfg.get_doubles("perturb.grid");
  int split_nmax =
      static_cast<int>(cfg.get_int("perturb.splitting_n_max", 0));
  PerturbedModel p;
  if (type == "quadratic") {
    p = add_quadratic(m, 0.0);
  } else if (type == "field") {
    std::vector<double> w = cfg.get_doubles("perturb.field");
    if (static_cast<int>(w.size()) != m.N * m.N)
      throw ConfigError("perturb.field needs N*N row-major entries");
    Matrix W(m.N, m.N);
    for (int i = 0; i < m.N; ++i)
      for (int j = 0; j < m.N; ++j) W(i, j) = w[i * m.N + j];
    p = add_field(m, W, 0.0);
  } else {
    throw ConfigError("perturb.type must be 'quadratic' or 'field'");
  }
  TroughSpec spec = find_trough(m);
  LoopPath path = loop_from_config(cfg, spec);
  cfg.reject_unknown();

  std::vector<ScanRow> rows =
      robustness_scan(p, path, grid, split_nmax, opt.threads);
  std::ostringstream csv;
  csv << "# schema=" << kSchemaVersion
      << " columns=strength,phase_raw,phase_snapped,min_gap,splitting,status\n";
  Json jrows = Json::array();
  for (const ScanRow& r : rows) {
    csv << format_double(r.strength) << "," << format_double(r.phase_raw)
        << "," << r.phase_snapped << "," << format_double(r.min_gap) << ",";
    if (r.splitting) csv << format_double(*r.splitting);
    csv << "," << r.status << "\n";
    Json jr;
    jr["strength"] = r.strength;
    jr["status"] = r.status;
    if (r.status == "ok") {
      jr["phase_raw"] = r.phase_raw;
      jr["phase"] = r.phase_snapped;
      jr["min_gap"] = r.min_gap;
      if (r.splitting) jr["splitting"] = *r.splitting;
    }
    jrows.push_back(jr);
  }
  Json payload;
  payload["type"] = type;
  payload["rows"] = jrows;
  CommandResult out;
  out.envelope = make_envelope(cfg, "perturb-scan", payload, !opt.no_timestamp);
  out.csv_files["perturb_scan.csv"] = csv.str();
  return out;
}

CommandResult run_command(const std::string& verb, RunConfig& cfg,
                          const CliOptions& opt) {
  if (verb == "model-info") return cmd_model_info(cfg, opt);
  if (verb == "trough") return cmd_trough(cfg, opt);
  if (verb == "berry") return cmd_berry(cfg, opt);
  if (verb == "holonomy") return cmd_holonomy(cfg, opt);
  if (verb == "vibronic") return cmd_vibronic(cfg, opt);
  if (verb == "rotor") return cmd_rotor(cfg, opt);
  if (verb == "apes-scan") return cmd_apes_scan(cfg, opt);
  if (verb == "perturb-scan") return cmd_perturb_scan(cfg, opt);
  throw ConfigError("unknown command '" + verb + "'");
}

int exit_code_for(const std::string& code) {
  if (code == "config" || code == "model-not-found" ||
      code == "invalid-parameter")
    return 2;
  if (code == "capacity") return 3;
  return 4;
}

}  // namespace jtberry
