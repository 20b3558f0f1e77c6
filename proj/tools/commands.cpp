#include <charconv>
#include <cmath>
#include <map>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "akpz/cli.hpp"
#include "akpz/errors.hpp"
#include "akpz/gibbs.hpp"
#include "akpz/hj.hpp"
#include "akpz/hydro.hpp"
#include "akpz/io.hpp"

namespace akpz::cli {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

// ---------------------------------------------------------------------------
// Settings

Settings::Settings(ptree input) : input_(std::move(input)) {}

Settings Settings::load(const fs::path& path) {
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    std::string where = e.filename();
    if (e.line() > 0) where += ":" + std::to_string(e.line());
    throw InputError(where + ": " + e.message());
  }
  return Settings(std::move(tree));
}

std::optional<std::string> Settings::raw(const std::string& key) const {
  auto v = input_.get_optional<std::string>(key);
  if (!v) return std::nullopt;
  std::string s = *v;
  const auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

void Settings::record(const std::string& key, const std::string& value) const {
  used_.insert(key);
  resolved_.put(key, value);
}

bool Settings::has(const std::string& key) const { return raw(key).has_value(); }

std::string Settings::text(const std::string& key) const {
  auto v = raw(key);
  if (!v) throw InputError("missing required key '" + key + "'");
  record(key, *v);
  return *v;
}

std::string Settings::text(const std::string& key, const std::string& fallback) const {
  auto v = raw(key);
  record(key, v ? *v : fallback);
  return v ? *v : fallback;
}

namespace {

template <typename F>
auto parse_key(const std::string& key, const std::string& value, F&& parse) {
  try {
    return parse(value);
  } catch (const InputError& e) {
    throw InputError("key '" + key + "': " + e.what());
  }
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

}  // namespace

double Settings::real(const std::string& key) const {
  return parse_key(key, text(key), parse_real);
}

double Settings::real(const std::string& key, double fallback) const {
  return parse_key(key, text(key, format_real(fallback)), parse_real);
}

long Settings::integer(const std::string& key) const {
  return parse_key(key, text(key), parse_int);
}

long Settings::integer(const std::string& key, long fallback) const {
  return parse_key(key, text(key, std::to_string(fallback)), parse_int);
}

std::uint64_t Settings::seed(const std::string& key) const {
  const std::string v = text(key);
  std::uint64_t x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || v.empty())
    throw InputError("key '" + key + "': not an unsigned integer: '" + v + "'");
  return x;
}

std::vector<double> Settings::reals(const std::string& key,
                                    const std::vector<double>& fallback) const {
  std::string def;
  for (double x : fallback) def += (def.empty() ? "" : " ") + format_real(x);
  std::vector<double> out;
  for (const auto& w : words(text(key, def))) out.push_back(parse_key(key, w, parse_real));
  return out;
}

std::vector<long> Settings::integers(const std::string& key,
                                     const std::vector<long>& fallback) const {
  std::string def;
  for (long x : fallback) def += (def.empty() ? "" : " ") + std::to_string(x);
  std::vector<long> out;
  for (const auto& w : words(text(key, def))) out.push_back(parse_key(key, w, parse_int));
  return out;
}

void Settings::set(const std::string& key, const std::string& value) { input_.put(key, value); }

void Settings::check_all_used() const {
  for (const auto& [section, body] : input_) {
    if (section == "manifest") continue;
    if (body.empty()) {
      if (!used_.count(section)) throw InputError("unknown key '" + section + "'");
      continue;
    }
    for (const auto& [key, value] : body)
      if (!used_.count(section + "." + key))
        throw InputError("unknown key '" + section + "." + key + "'");
  }
}

void write_manifest(const fs::path& out, const std::string& subcommand,
                    const Settings& settings, const std::vector<std::string>& outputs) {
  ptree tree = settings.resolved();
  tree.put("manifest.subcommand", subcommand);
  tree.put("manifest.version", kVersion);
  std::string list;
  for (const auto& o : outputs) list += (list.empty() ? "" : " ") + o;
  tree.put("manifest.outputs", list);
  boost::property_tree::ini_parser::write_ini((out / "manifest.ini").string(), tree);
}

// ---------------------------------------------------------------------------
// Shared readers

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw InputError("cannot write " + (dir / name).string());
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot read " + path);
  return is;
}

ProfileSpec read_profile(const Settings& s, const std::string& sec) {
  const std::string name = s.text(sec + ".name");
  std::map<std::string, double> p;
  auto need = [&](const std::string& k) { p[k] = s.real(sec + "." + k); };
  if (name == "affine") {
    need("rho1");
    need("rho2");
  } else if (name == "bump") {
    need("rho1");
    need("rho2");
    need("a");
    need("w");
    p["x01"] = s.real(sec + ".x01", 0.0);
    p["x02"] = s.real(sec + ".x02", 0.0);
  } else if (name == "max_affine") {
    for (const char* k : {"rho_minus1", "rho_minus2", "rho_plus1", "rho_plus2"}) need(k);
  }
  return profile_from_params(name, p);
}

Rect read_rect(const Settings& s, const std::string& sec) {
  Rect r{static_cast<int>(s.integer(sec + ".x1_min")), static_cast<int>(s.integer(sec + ".x1_max")),
         static_cast<int>(s.integer(sec + ".x2_min")), static_cast<int>(s.integer(sec + ".x2_max"))};
  if (r.x1_min > r.x1_max || r.x2_min > r.x2_max)
    throw InputError("section [" + sec + "]: empty rectangle");
  return r;
}

std::vector<StarVertex> rect_vertices(const Rect& r) {
  std::vector<StarVertex> out;
  for (int x1 = r.x1_min; x1 <= r.x1_max; ++x1)
    for (int x2 = r.x2_min; x2 <= r.x2_max; ++x2) out.push_back({x1, x2});
  return out;
}

Grid1D<double> read_axis(const Settings& s, const std::string& prefix) {
  Grid1D<double> g{s.real(prefix + "lo"), s.real(prefix + "hi"), s.integer(prefix + "n")};
  g.validate();
  return g;
}

Slope read_slope(const Settings& s, const std::string& sec) {
  Slope rho{s.real(sec + ".rho1"), s.real(sec + ".rho2")};
  if (!rho.in_interior()) throw InputError("slope outside the open triangle");
  return rho;
}

}  // namespace

// ---------------------------------------------------------------------------
// simulate

void cmd_simulate(Settings& s, const RunOptions& opt, std::ostream& log) {
  const double T = s.real("simulate.T");
  if (!(T >= 0.0)) throw InputError("simulate.T must be >= 0");
  const std::uint64_t seed = s.seed("simulate.seed");
  const auto times = s.reals("simulate.sample_times", {});
  const Rect probe_rect = read_rect(s, "probes");
  const auto probes = rect_vertices(probe_rect);

  ParticleConfig cfg;
  int gauge = 0;
  LocalizationBox box;
  const std::string source = s.text("initial.source", "profile");
  if (source == "profile") {
    const ProfileSpec phi0 = read_profile(s, "profile");
    const int L = static_cast<int>(s.integer("initial.L"));
    const double kappa = s.real("simulate.kappa", 4.0);
    box = scaled_box(probes, static_cast<int>(std::ceil(kappa * T)));
    cfg = config_from_profile(phi0, L, scaled_window(phi0, box, T));
    gauge = profile_gauge(phi0, L);
  } else if (source == "file") {
    auto is = open_in(s.text("initial.file"));
    cfg = read_config(is);
    gauge = static_cast<int>(s.integer("initial.gauge"));
    box = {static_cast<int>(s.integer("box.ell_minus")), static_cast<int>(s.integer("box.ell_plus")),
           static_cast<int>(s.integer("box.z2_minus")), static_cast<int>(s.integer("box.z2_plus"))};
  } else {
    throw InputError("initial.source must be 'profile' or 'file'");
  }
  if (auto r = validate_config(cfg); !r.ok())
    throw InputError("initial configuration invalid: " + r.violations.front().message);
  s.check_all_used();

  EventSource src(seed, box, T);
  Trajectory tr = simulate(cfg, src, probes, gauge, times);
  {
    auto os = open_out(opt.out, "initial.txt");
    write_config(os, tr.initial);
  }
  {
    auto os = open_out(opt.out, "final.txt");
    write_config(os, tr.final_cfg);
  }
  {
    auto os = open_out(opt.out, "trajectory.csv");
    write_trajectory_csv(os, tr, T);
  }
  {
    auto os = open_out(opt.out, "final_height.csv");
    auto hs = tr.final_heights();
    Eigen::MatrixXi v(probe_rect.width(), probe_rect.height());
    for (std::size_t k = 0; k < probes.size(); ++k)
      v(probes[k].x1 - probe_rect.x1_min, probes[k].x2 - probe_rect.x2_min) = hs[k];
    write_height_csv(os, make_height_field(probe_rect, v));
  }
  write_manifest(opt.out, "simulate", s,
                 {"initial.txt", "final.txt", "trajectory.csv", "final_height.csv"});
  log << "simulate: " << tr.events_applied << " events, " << tr.jumps << " jumps\n";
}

// ---------------------------------------------------------------------------
// gibbs

void cmd_gibbs(Settings& s, const RunOptions& opt, std::ostream& log) {
  const Slope rho = read_slope(s, "gibbs");
  const int N = static_cast<int>(s.integer("gibbs.N"));
  const long sweeps = s.integer("gibbs.sweeps", default_sweeps(N));
  const std::uint64_t seed = s.seed("gibbs.seed");
  const int samples = static_cast<int>(s.integer("gibbs.samples", 1));
  const int line = static_cast<int>(s.integer("gibbs.line", 0));
  const int r = static_cast<int>(s.integer("gibbs.r", N));
  const int Lwin = static_cast<int>(s.integer("gibbs.Lwin", N));
  const double drift_T = s.real("gibbs.drift_T", 0.0);
  const long drift_seeds = drift_T > 0 ? s.integer("gibbs.drift_seeds", 4) : 0;
  Window win{static_cast<int>(s.integer("window.line_min", -2)),
             static_cast<int>(s.integer("window.line_max", 2)),
             static_cast<int>(s.integer("window.z2_min", -2 * N)),
             static_cast<int>(s.integer("window.z2_max", 2 * N))};
  if (samples < 1) throw InputError("gibbs.samples must be >= 1");
  s.check_all_used();

  std::vector<std::string> outputs;
  auto stats = open_out(opt.out, "stats.csv");
  write_csv_row(stats, {"statistic", "rho1", "rho2", "N", "T", "seed", "estimate", "stderr"});
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t sk = seed + static_cast<std::uint64_t>(k);
    TorusTiling t = sample_gibbs(rho, N, sweeps, sk);
    const std::string name = "sample_" + std::to_string(k) + ".txt";
    auto os = open_out(opt.out, name);
    os << "# gauge " << t.gauge() << '\n';
    write_config(os, t.config(win));
    outputs.push_back(name);
    const std::vector<std::string> head{format_real(rho.rho1), format_real(rho.rho2),
                                        std::to_string(N), "0", std::to_string(sk)};
    auto row = [&](const std::string& stat, double v) {
      std::vector<std::string> f{stat};
      f.insert(f.end(), head.begin(), head.end());
      f.push_back(format_real(v));
      f.push_back("");
      write_csv_row(stats, f);
    };
    row("density", static_cast<double>(density_stats(t, line, r)) / r);
    row("fluctuation", fluctuation_stats(t, rho, Lwin));
  }
  if (drift_seeds > 0) {
    std::vector<std::uint64_t> seeds;
    for (long k = 0; k < drift_seeds; ++k) seeds.push_back(seed + static_cast<std::uint64_t>(k));
    DriftOptions dopt;
    dopt.sweeps = sweeps;
    auto d = drift_estimate(rho, N, drift_T, seeds, dopt);
    write_csv_row(stats, {"drift", format_real(rho.rho1), format_real(rho.rho2), std::to_string(N),
                          format_real(drift_T), std::to_string(seed), format_real(d.mean),
                          format_real(d.std_error)});
    log << "gibbs: drift " << d.mean << " +- " << d.std_error << '\n';
  }
  outputs.push_back("stats.csv");
  write_manifest(opt.out, "gibbs", s, outputs);
  log << "gibbs: " << samples << " samples\n";
}

// ---------------------------------------------------------------------------
// pde

void cmd_pde(Settings& s, const RunOptions& opt, std::ostream& log) {
  const std::string mode = s.text("pde.mode");
  std::vector<std::string> outputs;
  if (mode == "characteristics" || mode == "hopf") {
    const double t = s.real("pde.t");
    const ProfileSpec phi0 = read_profile(s, "profile");
    Grid2D<double> grid{read_axis(s, "grid.x1_"), read_axis(s, "grid.x2_")};
    const int samples = static_cast<int>(s.integer("pde.samples", 161));
    s.check_all_used();
    if (mode == "characteristics") {
      auto r = characteristics_solve(phi0, t, grid);
      if (!r.failed.empty())
        throw NumericalError("characteristics: Newton failed at " + std::to_string(r.failed.size()) +
                             " nodes (converges up to t = " + format_real(r.t_converged) + ")");
      for (auto [name, f] : {std::pair{"phi.csv", &r.phi}, std::pair{"grad1.csv", &r.grad1},
                             std::pair{"grad2.csv", &r.grad2}}) {
        auto os = open_out(opt.out, name);
        write_grid_csv(os, *f);
        outputs.push_back(name);
      }
      log << "pde: max residual " << r.max_residual << '\n';
    } else {
      auto phi = HopfSolver(phi0, samples).solve(grid, t);
      auto os = open_out(opt.out, "phi.csv");
      write_grid_csv(os, phi);
      outputs.push_back("phi.csv");
    }
  } else if (mode == "riemann") {
    const double t = s.real("pde.t");
    RiemannSpec spec = riemann_from_slopes({s.real("riemann.rho_minus1"), s.real("riemann.rho_minus2")},
                                           {s.real("riemann.rho_plus1"), s.real("riemann.rho_plus2")});
    const Grid1D<double> ys = read_axis(s, "riemann.y_");
    RiemannOptions ro;
    ro.nodes = s.integer("riemann.nodes", ro.nodes);
    s.check_all_used();
    std::vector<double> y(static_cast<std::size_t>(ys.n));
    for (Eigen::Index i = 0; i < ys.n; ++i) y[static_cast<std::size_t>(i)] = ys.node(i);
    auto sol = riemann_solve(spec, y, t, ro);
    auto os = open_out(opt.out, "riemann.csv");
    write_csv_row(os, {"y", "psi", "u"});
    for (std::size_t k = 0; k < y.size(); ++k)
      write_csv_row(os, {format_real(y[k]), format_real(sol[k].psi), format_real(sol[k].u)});
    outputs.push_back("riemann.csv");
    const char* kind = sol.empty()                                ? "none"
                       : sol[0].kind == RiemannKind::Shock       ? "shock"
                       : sol[0].kind == RiemannKind::Rarefaction ? "rarefaction"
                                                                 : "constant";
    log << "pde: riemann " << kind << '\n';
  } else if (mode == "envelope") {
    const std::string input = s.text("envelope.input");
    s.check_all_used();
    auto is = open_in(input);
    std::string first;
    std::getline(is, first);
    is.seekg(0);
    auto os = open_out(opt.out, "envelope.csv");
    if (parse_csv_row(first).size() == 3)
      write_grid_csv(os, convex_envelope(read_grid1d_csv(is)));
    else
      write_grid_csv(os, convex_envelope(read_grid2d_csv(is)));
    outputs.push_back("envelope.csv");
  } else {
    throw InputError("pde.mode must be characteristics, hopf, riemann or envelope");
  }
  write_manifest(opt.out, "pde", s, outputs);
}

// ---------------------------------------------------------------------------
// hydro

namespace {

std::vector<ConvergenceRow> read_rows_csv(const std::string& path) {
  auto is = open_in(path);
  std::string text;
  std::getline(is, text);
  std::vector<ConvergenceRow> rows;
  while (std::getline(is, text)) {
    if (text.empty()) continue;
    auto f = parse_csv_row(text);
    if (f.size() != 9) throw InputError(path + ": expected 9 fields per row");
    ConvergenceRow r;
    r.L = static_cast<int>(parse_int(f[0]));
    r.seed_index = static_cast<int>(parse_int(f[1]));
    r.seed = static_cast<std::uint64_t>(parse_int(f[2]));
    r.x = {parse_real(f[3]), parse_real(f[4])};
    r.simulated = parse_real(f[5]);
    r.reference = parse_real(f[6]);
    r.error = parse_real(f[7]);
    r.sandwich_ok = f[8] == "1";
    rows.push_back(r);
  }
  return rows;
}

void write_summary(std::ostream& os, const HydroSummary& sum) {
  for (const auto& lv : sum.levels)
    os << "L=" << lv.L << " rows=" << lv.rows << " median=" << format_real(lv.median)
       << " max=" << format_real(lv.max) << " sandwich=" << (lv.sandwich_ok ? "ok" : "violated")
       << '\n';
  os << "monotone=" << (sum.monotone ? "yes" : "no") << " final_median=" << format_real(sum.final_median)
     << " threshold=" << format_real(sum.threshold) << '\n';
  os << "verdict: " << (sum.pass ? "pass" : "fail") << '\n';
}

}  // namespace

void cmd_hydro(Settings& s, const RunOptions& opt, std::ostream& log) {
  std::vector<std::string> outputs;
  if (s.has("hydro.table")) {
    const std::string path = s.text("hydro.table");
    const double threshold = s.real("hydro.threshold");
    s.check_all_used();
    auto sum = aggregate(read_rows_csv(path), threshold);
    auto os = open_out(opt.out, "summary.txt");
    write_summary(os, sum);
    write_summary(log, sum);
    write_manifest(opt.out, "hydro", s, {"summary.txt"});
    return;
  }
  const std::string mode = s.text("hydro.mode");
  if (mode != "smooth" && mode != "shock") throw InputError("hydro.mode must be smooth or shock");
  Experiment exp = mode == "smooth" ? default_smooth_experiment() : default_shock_experiment();
  if (s.text("hydro.preset", "default") == "custom") {
    exp.profile = read_profile(s, "profile");
    exp.t = s.real("hydro.t");
    const Eigen::Vector2d c(s.real("probes.center1"), s.real("probes.center2"));
    const long half = s.integer("probes.half");
    const double step = s.real("probes.step");
    exp.probes.clear();
    for (long i = -half; i <= half; ++i)
      for (long j = -half; j <= half; ++j)
        exp.probes.push_back(c + step * Eigen::Vector2d(double(i), double(j)));
  } else {
    exp.t = s.real("hydro.t", exp.t);
  }
  exp.Ls.clear();
  for (long L : s.integers("hydro.Ls", {32, 64, 128})) exp.Ls.push_back(static_cast<int>(L));
  exp.seeds_per_L = static_cast<int>(s.integer("hydro.seeds_per_L", exp.seeds_per_L));
  exp.kappa = s.real("hydro.kappa", exp.kappa);
  exp.threshold = s.real("hydro.threshold", exp.threshold);
  exp.shock_strip = s.real("hydro.shock_strip", exp.shock_strip);
  exp.seed = s.seed("hydro.seed");
  exp.threads = opt.threads;
  s.check_all_used();

  HydroTable tab = run_experiment(exp);
  {
    auto os = open_out(opt.out, "rows.csv");
    write_csv_row(os, {"L", "seed_index", "seed", "x1", "x2", "simulated", "reference", "error",
                       "sandwich"});
    for (const auto& r : tab.rows)
      write_csv_row(os, {std::to_string(r.L), std::to_string(r.seed_index), std::to_string(r.seed),
                         format_real(r.x[0]), format_real(r.x[1]), format_real(r.simulated),
                         format_real(r.reference), format_real(r.error), r.sandwich_ok ? "1" : "0"});
  }
  auto sum = aggregate(tab.rows, exp.threshold);
  {
    auto os = open_out(opt.out, "summary.txt");
    os << "mode=" << mode << " t=" << format_real(exp.t) << " probes=" << tab.probes.size()
       << " excluded=" << tab.excluded.size() << '\n';
    write_summary(os, sum);
  }
  write_summary(log, sum);
  write_manifest(opt.out, "hydro", s, {"rows.csv", "summary.txt"});
}

// ---------------------------------------------------------------------------
// snapshot

void cmd_snapshot(Settings& s, const RunOptions& opt, std::ostream& log) {
  const std::string source = s.text("snapshot.source");
  const Rect rect = read_rect(s, "snapshot");
  const double unit = s.real("snapshot.unit", 12.0);
  Eigen::MatrixXi values(rect.width(), rect.height());
  auto fill = [&](auto&& h) {
    for (int x1 = rect.x1_min; x1 <= rect.x1_max; ++x1)
      for (int x2 = rect.x2_min; x2 <= rect.x2_max; ++x2)
        values(x1 - rect.x1_min, x2 - rect.x2_min) = h(StarVertex{x1, x2});
  };
  if (source == "gibbs") {
    const Slope rho = read_slope(s, "gibbs");
    const int N = static_cast<int>(s.integer("gibbs.N"));
    const long sweeps = s.integer("gibbs.sweeps", default_sweeps(N));
    const std::uint64_t seed = s.seed("snapshot.seed");
    s.check_all_used();
    TorusTiling t = sample_gibbs(rho, N, sweeps, seed);
    fill([&](StarVertex v) { return t.height(v); });
  } else if (source == "profile") {
    const ProfileSpec phi0 = read_profile(s, "profile");
    const int L = static_cast<int>(s.integer("snapshot.L"));
    s.check_all_used();
    fill([&](StarVertex v) { return discretized_height(phi0, L, v); });
  } else if (source == "file") {
    auto is = open_in(s.text("snapshot.file"));
    const int gauge = static_cast<int>(s.integer("snapshot.gauge"));
    s.check_all_used();
    ParticleConfig cfg = read_config(is);
    fill([&](StarVertex v) { return height_at(cfg, v, gauge); });
  } else {
    throw InputError("snapshot.source must be gibbs, profile or file");
  }
  HeightField h = make_height_field(rect, values);
  if (auto bad = check_increments(h); !bad.empty())
    throw InputError("snapshot: not a tiling height: " + bad.front());
  {
    auto os = open_out(opt.out, "tiling.svg");
    write_tiling_svg(os, h, unit);
  }
  {
    auto os = open_out(opt.out, "height.csv");
    write_height_csv(os, h);
  }
  write_manifest(opt.out, "snapshot", s, {"tiling.svg", "height.csv"});
  log << "snapshot: " << rect.width() << "x" << rect.height() << " vertices\n";
}

// ---------------------------------------------------------------------------

int run_subcommand(const std::string& name, const RunOptions& opt, std::ostream& log,
                   std::ostream& err) {
  try {
    Settings s = Settings::load(opt.config);
    if (opt.seed) s.set((name == "snapshot" ? "snapshot" : name) + ".seed", std::to_string(*opt.seed));
    fs::create_directories(opt.out);
    if (name == "simulate")
      cmd_simulate(s, opt, log);
    else if (name == "gibbs")
      cmd_gibbs(s, opt, log);
    else if (name == "pde")
      cmd_pde(s, opt, log);
    else if (name == "hydro")
      cmd_hydro(s, opt, log);
    else if (name == "snapshot")
      cmd_snapshot(s, opt, log);
    else
      throw InputError("unknown subcommand '" + name + "'");
    return kOk;
  } catch (const InputError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const WindowError& e) {
    err << "resource guard: window too small: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace akpz::cli
