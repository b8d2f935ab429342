#include "spreadlab/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "spreadlab/dichotomy.hpp"
#include "spreadlab/dirac.hpp"
#include "spreadlab/dispersion.hpp"
#include "spreadlab/fermi.hpp"
#include "spreadlab/initial_state.hpp"
#include "spreadlab/localization.hpp"

namespace spreadlab::cli {

namespace {

using Summary = std::vector<std::pair<std::string, std::string>>;

void put(Summary& s, const std::string& key, double v) { s.emplace_back(key, format_real(v)); }
void put(Summary& s, const std::string& key, bool v) { s.emplace_back(key, v ? "true" : "false"); }
void put(Summary& s, const std::string& key, const std::string& v) { s.emplace_back(key, v); }

Grid read_grid(Config& cfg) {
  const long n = cfg.integer("grid.n_points", 4096);
  const double length = cfg.real("grid.length", 64.0);
  if (n < 8) throw ConfigError("grid.n_points must be a power of two >= 8");
  try {
    return Grid(static_cast<std::size_t>(n), length);
  } catch (const BadParams& e) {
    throw ConfigError(std::string("grid.n_points/grid.length: ") + e.what());
  }
}

InitialStateSpec read_state(Config& cfg) {
  const std::string kind = cfg.text("state.kind", "bump");
  if (kind == "bump") {
    return Bump{cfg.real("state.center", 0.0), cfg.real("state.half_width", 1.0)};
  }
  if (kind == "gaussian") {
    return Gaussian{cfg.real("state.center", 0.0), cfg.real("state.width", 1.0)};
  }
  if (kind == "exponential") {
    return Exponential{cfg.real("state.center", 0.0), cfg.real("state.decay_rate")};
  }
  if (kind == "uniform") {
    return Uniform{Region::interval(cfg.real("state.lo"), cfg.real("state.hi"))};
  }
  throw ConfigError("state.kind must be bump, gaussian, exponential or uniform, got '" + kind + "'");
}

InitialStateSpec read_compact_state(Config& cfg) {
  InitialStateSpec spec = read_state(cfg);
  if (!compact_support(spec)) throw ConfigError("state.kind must be compactly supported here");
  return spec;
}

Dispersion read_dispersion(Config& cfg) {
  const std::string kind = cfg.text("physics.dispersion", "relativistic");
  const double mass = cfg.real("physics.mass");
  if (kind == "relativistic") {
    if (mass < 0.0) throw ConfigError("physics.mass must be >= 0");
    return Dispersion::relativistic(mass);
  }
  if (kind == "nonrelativistic") {
    if (!(mass > 0.0)) throw ConfigError("physics.mass must be > 0 for nonrelativistic");
    return Dispersion::nonrelativistic(mass);
  }
  throw ConfigError("physics.dispersion must be relativistic or nonrelativistic, got '" + kind + "'");
}

double read_mass(Config& cfg) {
  const double m = cfg.real("physics.mass");
  if (m < 0.0) throw ConfigError("physics.mass must be >= 0");
  return m;
}

std::array<cplx, 2> read_polarization(Config& cfg) {
  const std::string p = cfg.text("physics.polarization", "upper");
  const double r = 1.0 / std::numbers::sqrt2;
  if (p == "upper") return {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
  if (p == "lower") return {cplx{0.0, 0.0}, cplx{1.0, 0.0}};
  if (p == "plus") return {cplx{r, 0.0}, cplx{r, 0.0}};
  if (p == "circular") return {cplx{r, 0.0}, cplx{0.0, r}};
  throw ConfigError("physics.polarization must be upper, lower, plus or circular, got '" + p + "'");
}

struct FloorSettings {
  double mass;
  double t_probe;
};

FloorSettings read_floor(Config& cfg) {
  FloorSettings f{cfg.real("floor.mass", 1.0), cfg.real("floor.t_probe", 2.0)};
  if (f.mass < 0.0) throw ConfigError("floor.mass must be >= 0");
  return f;
}

void put_floor(Summary& s, const NoiseFloor& nf) {
  put(s, "floor", nf.floor);
  put(s, "threshold", nf.threshold);
}

long positive_count(Config& cfg, const std::string& key, long fallback, long minimum) {
  const long n = cfg.integer(key, fallback);
  if (n < minimum) throw ConfigError(key + " must be >= " + std::to_string(minimum));
  return n;
}

std::vector<double> uniform_times(double t_end, long n) {
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
  return ts;
}

CsvTable density_table(const std::string& name, const Grid& grid,
                       const std::vector<std::pair<std::string, std::vector<double>>>& curves) {
  CsvTable tab;
  tab.name = name;
  tab.columns.push_back({"x", "length"});
  for (const auto& [col, values] : curves) tab.columns.push_back({col, "1/length"});
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    std::vector<double> row{grid.x(i)};
    for (const auto& [col, values] : curves) row.push_back(values[i]);
    tab.add_row(std::move(row));
  }
  return tab;
}

std::vector<double> densities(const WaveFunction& psi) {
  std::vector<double> d(psi.grid().n_points());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(psi[i]);
  return d;
}

std::vector<double> densities(const DiracSpinor& psi) {
  std::vector<double> d(psi.grid().n_points());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = psi.density(i);
  return d;
}

void add_grid_metadata(CsvTable& tab, const Grid& grid) {
  tab.metadata.emplace_back("n_points", std::to_string(grid.n_points()));
  tab.metadata.emplace_back("length", format_real(grid.length()));
}

ExperimentResult spreading(Config& cfg) {
  const Grid grid = read_grid(cfg);
  const InitialStateSpec spec = read_compact_state(cfg);
  const Dispersion disp = read_dispersion(cfg);
  const double t = cfg.real("physics.t", 0.25);
  const Region region = Region::interval(cfg.real("physics.region_lo", 10.0),
                                         cfg.real("physics.region_hi", 12.0));
  const long factor = positive_count(cfg, "physics.reference_factor", 4, 2);
  const long n_times = positive_count(cfg, "physics.n_times", 9, 2);
  const FloorSettings fs = read_floor(cfg);
  cfg.finish();

  const NoiseFloor nf = calibrate_floor(grid, fs.mass, fs.t_probe);
  const double p = spreading_probe(grid, spec, disp, t, region);
  const Grid fine = grid.refined(static_cast<std::size_t>(factor));
  const double p_ref = spreading_probe(fine, spec, disp, t, region);
  const double rel = std::abs(p - p_ref) / p_ref;

  ExperimentResult res;
  CsvTable probe;
  probe.name = "probe";
  add_grid_metadata(probe, grid);
  probe.metadata.emplace_back("region", "[" + format_real(region.lower()) + ", " +
                                            format_real(region.upper()) + ")");
  probe.columns = {{"t", "time"}, {"probability", "1"}};
  for (double ti : uniform_times(t, n_times)) {
    probe.add_row({ti, spreading_probe(grid, spec, disp, ti, region)});
  }
  res.tables.push_back(std::move(probe));

  const WaveFunction psi0 = make_state(spec, grid);
  res.tables.push_back(density_table("density", grid,
                                     {{"density_initial", densities(psi0)},
                                      {"density_final", densities(evolve(psi0, disp, t))}}));

  put_floor(res.summary, nf);
  put(res.summary, "probability", p);
  put(res.summary, "reference_probability", p_ref);
  put(res.summary, "relative_difference", rel);
  put(res.summary, "detected", p > nf.threshold);
  put(res.summary, "reference_agrees", rel < 5e-2);
  res.invariant = "spreading_detected";
  res.passed = p > nf.threshold && rel < 5e-2;
  return res;
}

ExperimentResult leakage(Config& cfg) {
  const Grid grid = read_grid(cfg);
  const InitialStateSpec spec = read_state(cfg);
  const Dispersion disp = read_dispersion(cfg);
  const double t = cfg.real("physics.t", 1.0);
  const double r0 = cfg.real("physics.r0", 2.0);
  const long n_times = positive_count(cfg, "physics.n_times", 5, 2);
  const FloorSettings fs = read_floor(cfg);
  cfg.finish();

  const NoiseFloor nf = calibrate_floor(grid, fs.mass, fs.t_probe);
  ExperimentResult res;
  CsvTable tab;
  tab.name = "leakage";
  add_grid_metadata(tab, grid);
  tab.metadata.emplace_back("r0", format_real(r0));
  tab.columns = {{"t", "time"}, {"lhs", "1"}, {"rhs", "1"}, {"leakage", "1"}};
  double at_zero = 0.0, final_leak = 0.0;
  for (double ti : uniform_times(t, n_times)) {
    const LeakageResult lr = lightcone_leakage(grid, spec, disp, ti, r0);
    if (ti == 0.0) at_zero = lr.leakage;
    final_leak = lr.leakage;
    tab.add_row({lr.t, lr.lhs, lr.rhs, lr.leakage});
  }
  res.tables.push_back(std::move(tab));

  put_floor(res.summary, nf);
  put(res.summary, "leakage", final_leak);
  put(res.summary, "leakage_at_zero", at_zero);
  res.invariant = "leakage_positive";
  res.passed = final_leak > nf.threshold && at_zero == 0.0;
  return res;
}

ExperimentResult dirac_control(Config& cfg) {
  const Grid grid = read_grid(cfg);
  const double mass = read_mass(cfg);
  const double t = cfg.real("physics.t", 2.0);
  const long n_times = positive_count(cfg, "physics.n_times", 9, 2);
  cfg.finish();

  check_time_guard(grid, t);
  ExperimentResult res;
  CsvTable tab;
  tab.name = "control";
  add_grid_metadata(tab, grid);
  tab.metadata.emplace_back("half_width", format_real(kControlHalfWidth));
  tab.columns = {{"t", "time"}, {"exterior_probability", "1"}};
  for (double ti : uniform_times(t, n_times)) tab.add_row({ti, dirac_control_exterior(grid, mass, ti)});
  res.tables.push_back(std::move(tab));

  const NoiseFloor nf = calibrate_floor(grid, mass, t);
  put_floor(res.summary, nf);
  put(res.summary, "floor < 1e-12", nf.floor < 1e-12);
  res.invariant = "causal_control";
  res.passed = nf.floor < 1e-12;
  return res;
}

ExperimentResult positive_energy(Config& cfg) {
  const Grid grid = read_grid(cfg);
  const InitialStateSpec spec = read_compact_state(cfg);
  const double mass = read_mass(cfg);
  const auto pol = read_polarization(cfg);
  const FloorSettings fs = read_floor(cfg);
  cfg.finish();

  const NoiseFloor nf = calibrate_floor(grid, fs.mass, fs.t_probe);
  const DiracParams params(mass);
  const Interval support = *compact_support(spec);
  const Region region = Region::interval(support.lo, support.hi);
  const DiracSpinor psi = make_spinor(spec, grid, pol);
  const ProjectedSpinor proj = positive_energy_project(psi, params);
  const LocalizationVerdict plain = strict_localization_check(psi, region, 1e-13);
  const LocalizationVerdict projected = strict_localization_check(proj.spinor, region, nf.threshold);

  ExperimentResult res;
  res.tables.push_back(density_table(
      "spinor", grid, {{"density", densities(psi)}, {"density_projected", densities(proj.spinor)}}));
  put_floor(res.summary, nf);
  put(res.summary, "positive_energy_weight", proj.weight);
  put(res.summary, "defect_unprojected", plain.defect);
  put(res.summary, "defect_projected", projected.defect);
  put(res.summary, "unprojected_localized", plain.strictly_localized);
  put(res.summary, "projected_localized", projected.strictly_localized);
  res.invariant = "projection_delocalizes";
  res.passed = plain.strictly_localized && projected.defect > nf.threshold;
  return res;
}

FermiParams read_fermi(Config& cfg, const FermiParams& defaults) {
  FermiParams p;
  p.R = cfg.real("fermi.R", defaults.R);
  p.omega_atom = cfg.real("fermi.omega_atom", defaults.omega_atom);
  p.lambda = cfg.real("fermi.lambda", defaults.lambda);
  p.field_length = cfg.real("fermi.field_length", defaults.field_length);
  p.n_modes = cfg.integer("fermi.n_modes", defaults.n_modes);
  p.k_max = cfg.real("fermi.k_max", defaults.k_max);
  p.b_coupled = cfg.flag("fermi.b_coupled", defaults.b_coupled);
  try {
    p.validate();
  } catch (const BadParams& e) {
    throw ConfigError(std::string("fermi: ") + e.what());
  }
  return p;
}

ExperimentResult dichotomy(Config& cfg) {
  const std::string system = cfg.text("dichotomy.system", "random");
  const std::uint64_t seed = cfg.unsigned_integer("seed", 1);
  std::function<DichotomySystem()> build;
  if (system == "random") {
    const long dim = positive_count(cfg, "dichotomy.dim", 16, 2);
    if (dim > DichotomySystem::kMaxDim) throw ConfigError("dichotomy.dim must be <= 256");
    const std::string obs = cfg.text("dichotomy.observable", "contraction");
    RandomObservable kind;
    if (obs == "contraction") {
      kind = RandomObservable::positive_contraction;
    } else if (obs == "projector") {
      kind = RandomObservable::zero_start_projector;
    } else {
      throw ConfigError("dichotomy.observable must be contraction or projector, got '" + obs + "'");
    }
    build = [=] { return random_system(seed, dim, kind); };
  } else if (system == "block") {
    const long dim = positive_count(cfg, "dichotomy.dim", 16, 2);
    if (dim > DichotomySystem::kMaxDim) throw ConfigError("dichotomy.dim must be <= 256");
    build = [=] { return block_invariant_system(seed, dim); };
  } else if (system == "fermi") {
    FermiParams reduced;
    reduced.field_length = 40.0;
    reduced.n_modes = 128;
    reduced.k_max = 10.0;
    const FermiParams p = read_fermi(cfg, reduced);
    build = [=] { return fermi_dichotomy_system(p); };
  } else {
    throw ConfigError("dichotomy.system must be random, block or fermi, got '" + system + "'");
  }
  const double t_begin = cfg.real("dichotomy.t_begin", 0.0);
  const double t_end = cfg.real("dichotomy.t_end", 20.0);
  const long samples = positive_count(cfg, "dichotomy.samples", 2000, 1000);
  if (!(t_end > t_begin)) throw ConfigError("dichotomy.t_end must exceed dichotomy.t_begin");
  cfg.finish();

  const DichotomySystem sys = build();
  const std::vector<double> ts = [&] {
    std::vector<double> v(static_cast<std::size_t>(samples));
    for (long i = 0; i < samples; ++i) {
      v[static_cast<std::size_t>(i)] =
          t_begin + (t_end - t_begin) * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    return v;
  }();
  const std::vector<double> f = expectation_scan(sys, ts);

  ExperimentResult res;
  CsvTable tab;
  tab.name = "expectation";
  tab.metadata.emplace_back("system", system);
  tab.metadata.emplace_back("dim", std::to_string(sys.dim()));
  tab.metadata.emplace_back("seed", std::to_string(seed));
  tab.columns = {{"t", "time"}, {"F", "1"}};
  for (std::size_t i = 0; i < ts.size(); ++i) tab.add_row({ts[i], f[i]});
  res.tables.push_back(std::move(tab));

  put(res.summary, "dim", static_cast<double>(sys.dim()));
  put(res.summary, "observable_bound", sys.observable_bound());
  put(res.summary, "zero_tolerance", sys.zero_tolerance());
  res.invariant = "dichotomy_holds";
  try {
    const DichotomyVerdict v = classify(sys, t_begin, t_end, static_cast<std::size_t>(samples));
    put(res.summary, "classification", std::string(to_string(v.classification)));
    put(res.summary, "isolated_zeros", static_cast<double>(v.zero_times.size()));
    put(res.summary, "min_value", v.min_value);
    put(res.summary, "max_value", v.max_value);
    res.passed = true;
  } catch (const DichotomyViolation& e) {
    put(res.summary, "classification", std::string("violation"));
    put(res.summary, "violation", std::string(e.what()));
    res.passed = false;
  }
  return res;
}

ExperimentResult translation(Config& cfg) {
  const Grid grid = read_grid(cfg);
  const InitialStateSpec spec = read_compact_state(cfg);
  const Region region = Region::interval(cfg.real("physics.region_lo", 4.0),
                                         cfg.real("physics.region_hi", 6.0));
  const double t_end = cfg.real("physics.t_end", 10.0);
  const long stride = positive_count(cfg, "physics.stride", 4, 1);
  cfg.finish();

  const WaveFunction psi0 = make_state(spec, grid);
  const double dt = static_cast<double>(stride) * grid.spacing();
  std::vector<double> ts;
  for (long i = 0; static_cast<double>(i) * dt <= t_end * (1.0 + 1e-12); ++i) {
    ts.push_back(static_cast<double>(i) * dt);
  }
  const double gap = transport_gap(psi0, region);
  const std::vector<double> f = translation_control(grid, psi0, region, ts);

  ExperimentResult res;
  CsvTable tab;
  tab.name = "transport";
  add_grid_metadata(tab, grid);
  tab.columns = {{"t", "time"}, {"F", "1"}};
  bool zero_before = true;
  bool positive_after = false;
  double zero_until = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tab.add_row({ts[i], f[i]});
    if (ts[i] < gap && f[i] != 0.0) zero_before = false;
    if (f[i] == 0.0 && !positive_after) zero_until = ts[i];
    if (f[i] > 0.0) positive_after = true;
  }
  res.tables.push_back(std::move(tab));

  put(res.summary, "transport_gap", gap);
  put(res.summary, "zero_until", zero_until);
  put(res.summary, "zero_before_gap", zero_before);
  put(res.summary, "positive_after_gap", positive_after);
  res.invariant = "zero_then_positive";
  res.passed = gap > 0.0 && zero_before && positive_after && zero_until > 0.0;
  return res;
}

ExperimentResult fermi(Config& cfg) {
  const FermiParams p = read_fermi(cfg, FermiParams{});
  const double t_end = cfg.real("physics.t_end", 2.0 * p.R);
  const long n_times = positive_count(cfg, "physics.n_times", 401, 2);
  cfg.finish();

  const std::vector<double> ts = uniform_times(t_end, n_times);
  const auto states = evolve_fermi(p, ts);
  const auto pa = excitation_probability_A(states);
  const auto pb = excitation_probability_B(states);

  ExperimentResult res;
  CsvTable tab;
  tab.name = "fermi";
  tab.metadata.emplace_back("dim", std::to_string(states.front().c_k.size() + 2));
  tab.columns = {{"t", "time"}, {"P_A", "1"}, {"P_B", "1"}, {"norm_defect", "1"}};
  double worst_norm = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double defect = std::abs(states[i].norm_squared() - 1.0);
    worst_norm = std::max(worst_norm, defect);
    tab.add_row({ts[i], pa[i], pb[i], defect});
  }
  res.tables.push_back(std::move(tab));

  const double tol = DichotomySystem::kZeroTolerance;
  const bool coupled = p.lambda > 0.0 && p.b_coupled;
  bool consistent = true;
  double pre_min = 1.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] > 0.0 && ts[i] < p.R) pre_min = std::min(pre_min, pb[i]);
    if (coupled && ts[i] > 0.0 && ts[i] < p.R && !(pb[i] > tol)) consistent = false;
    if (!coupled && pb[i] != 0.0) consistent = false;
  }
  put(res.summary, "dim", static_cast<double>(states.front().c_k.size() + 2));
  put(res.summary, "norm_defect_max", worst_norm);
  put(res.summary, "zero_tolerance", tol);
  put(res.summary, "precursor_min", pre_min);
  if (t_end >= CausalityReport::kPostFrontEnd * p.R) {
    const CausalityReport rep = causality_report(p.R, ts, pb);
    put(res.summary, "front_time", rep.front_time);
    put(res.summary, "precursor_max", rep.precursor_max);
    put(res.summary, "post_front_max", rep.post_front_max);
    put(res.summary, "ratio", rep.ratio);
    put(res.summary, "front_dominates", rep.ratio < 0.1);
  }
  put(res.summary, "golden_rule_rate", golden_rule_rate(p));
  put(res.summary, "alternative", std::string(coupled ? "alternative_i" : "alternative_ii"));
  put(res.summary, "norm_conserved", worst_norm <= 1e-12);
  put(res.summary, "dichotomy_consistent", consistent);
  res.invariant = "fermi_consistent";
  res.passed = worst_norm <= 1e-12 && consistent;
  return res;
}

const std::map<std::string, std::function<ExperimentResult(Config&)>>& registry() {
  static const std::map<std::string, std::function<ExperimentResult(Config&)>> r{
      {"spreading", spreading},
      {"leakage", leakage},
      {"dirac-control", dirac_control},
      {"positive-energy", positive_energy},
      {"dichotomy", dichotomy},
      {"translation-control", translation},
      {"fermi", fermi},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

ExperimentResult run_experiment(Config& cfg) {
  const std::string name = cfg.text("experiment");
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw ConfigError("experiment '" + name + "' is not one of spreading, leakage, dirac-control, "
                      "positive-energy, dichotomy, translation-control, fermi");
  }
  if (name != "dichotomy") cfg.ignore("seed");
  ExperimentResult res = it->second(cfg);
  res.experiment = name;
  return res;
}

}  // namespace spreadlab::cli
