#include <algorithm>
#include <cctype>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cfgreen/cfrac.hpp"
#include "cfgreen/config.hpp"
#include "cfgreen/factor.hpp"
#include "cfgreen/grid.hpp"
#include "cfgreen/hermitize.hpp"
#include "cfgreen/io.hpp"
#include "cfgreen/oracle.hpp"
#include "cfgreen/roots.hpp"

namespace {

using namespace cfgreen;

struct SubContext {
  RunConfig cfg;
  std::vector<long> window{400, 400};
  std::vector<long> grid{81, 81};
  std::vector<double> energy{0.0, 0.0};
  std::vector<double> z{0.0, 0.0};
  std::string config_path;
};

std::string trim(const std::string& s) {
  const auto notspace = [](unsigned char ch) { return std::isspace(ch) == 0; };
  const auto b = std::find_if(s.begin(), s.end(), notspace);
  const auto e = std::find_if(s.rbegin(), s.rend(), notspace).base();
  return b < e ? std::string(b, e) : std::string();
}

/// Expands every `--config FILE` in the argument list into ordinary option
/// tokens.  CLI11 only processes a config option registered on the root app,
/// while all of our options live on the subcommands, so the file is spliced
/// into the token stream before parsing; that way CLI11 still does all type
/// conversion and rejects unknown keys.  Precedence: an option given on the
/// command line shadows the same key in the file; within the file, later
/// lines replace earlier ones.  Values with several whitespace-separated
/// fields feed multi-value options (e.g. `window=12 12`).
std::vector<std::string> expand_config_tokens(const std::vector<std::string>& args) {
  std::set<std::string> given;
  for (const std::string& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    out.push_back(args[i]);
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      out.push_back(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }

    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> by_key;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string entry = trim(line);
      if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
      const std::size_t eq = entry.find('=');
      const std::string key = eq == std::string::npos ? std::string() : trim(entry.substr(0, eq));
      if (key.empty())
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");

      std::vector<std::string> tokens;
      std::istringstream fields(trim(entry.substr(eq + 1)));
      std::string field;
      while (fields >> field) tokens.push_back(field);
      if (tokens.empty())
        tokens = {"--" + key + "="};
      else if (tokens.size() == 1)
        tokens = {"--" + key + "=" + tokens.front()};
      else
        tokens.insert(tokens.begin(), "--" + key);

      if (by_key.find(key) == by_key.end()) order.push_back(key);
      by_key[key] = std::move(tokens);
    }
    for (const std::string& key : order) {
      if (given.count("--" + key) != 0) continue;
      const std::vector<std::string>& tokens = by_key[key];
      out.insert(out.end(), tokens.begin(), tokens.end());
    }
  }
  return out;
}

void bind_common(CLI::App* cmd, SubContext& ctx) {
  RunConfig& cfg = ctx.cfg;
  // --h (lattice spacing) needs the short -h released by the default help flag
  cmd->set_help_flag("--help", "print help");
  cmd->add_option("--model", cfg.model, "model name (see the `models` subcommand)")
      ->capture_default_str();
  cmd->add_option("--n-bosons", cfg.n_bosons, "bose-hubbard ladder size (dim = n+1)")
      ->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma, "imaginary-diagonal strength")->capture_default_str();
  cmd->add_option("--interaction", cfg.interaction, "optional real diagonal strength")
      ->capture_default_str();
  cmd->add_option("--eta", cfg.eta, "complex shift of the complex-quartic potential")
      ->capture_default_str();
  cmd->add_option("--h", cfg.h, "lattice spacing for discretized models")->capture_default_str();
  cmd->add_option("--window", ctx.window, "lattice window [-M, N] as two integers")
      ->expected(2)
      ->capture_default_str();
  cmd->add_option("--region", cfg.region,
                  "search box re_lo re_hi im_lo im_hi (default: Gershgorin box)")
      ->expected(4);
  cmd->add_option("--grid", ctx.grid, "seeding grid nx ny")->expected(2)->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "real-axis scan resolution")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "pass/fail threshold for --verify and quality gates")
      ->capture_default_str();
  cmd->add_option("--max-depth", cfg.max_depth, "continued-fraction tail depth cap")
      ->capture_default_str();
  cmd->add_flag("--verify", cfg.verify, "cross-check against the dense reference algorithms");
  cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
  cmd->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed,
                  "echoed into outputs; reserved for stochastic search strategies")
      ->capture_default_str();
  cmd->add_option("--anchor", cfg.anchor, "continued-fraction anchor row: auto | low | center")
      ->check(CLI::IsMember({"auto", "low", "center"}))
      ->capture_default_str();
  cmd->add_option("--config", ctx.config_path, "read key=value options from a file");
}

void finalize(SubContext& ctx) {
  ctx.cfg.window_m = ctx.window[0];
  ctx.cfg.window_n = ctx.window[1];
  ctx.cfg.grid_nx = ctx.grid[0];
  ctx.cfg.grid_ny = ctx.grid[1];
  ctx.cfg.energy_re = ctx.energy[0];
  ctx.cfg.energy_im = ctx.energy[1];
  ctx.cfg.z_re = ctx.z[0];
  ctx.cfg.z_im = ctx.z[1];
}

CfOptions cf_options(const RunConfig& cfg) {
  CfOptions cf;
  cf.max_depth = cfg.max_depth;
  return cf;
}

long resolve_anchor(const RunConfig& cfg, const ModelBundle& b) {
  const Window& w = b.source.window;
  if (cfg.anchor == "low") {
    if (w.unbounded_below)
      throw std::invalid_argument("--anchor low needs a window bounded below");
    return w.lo;
  }
  if (cfg.anchor == "center") {
    if (!w.bounded()) throw std::invalid_argument("--anchor center needs a bounded window");
    return w.lo + w.size() / 2;
  }
  return default_anchor(w);
}

SearchRegion resolve_region(const RunConfig& cfg, const ModelBundle& b) {
  if (cfg.region.size() == 4) {
    SearchRegion r{cfg.region[0], cfg.region[1], cfg.region[2], cfg.region[3]};
    if (!(r.re_lo < r.re_hi && r.im_lo < r.im_hi))
      throw std::invalid_argument("--region must satisfy re_lo < re_hi and im_lo < im_hi");
    return r;
  }
  return gershgorin_region(b.matrix);
}

void push_common_meta(OutputTable& t, const std::string& command, const RunConfig& cfg,
                      const ModelBundle& b, const SearchRegion* region, long anchor) {
  t.meta.emplace_back("command", command);
  t.meta.emplace_back("model", cfg.model);
  t.meta.emplace_back("n_bosons", std::to_string(cfg.n_bosons));
  t.meta.emplace_back("gamma", format_double(cfg.gamma));
  t.meta.emplace_back("interaction", format_double(cfg.interaction));
  t.meta.emplace_back("eta", format_double(cfg.eta));
  t.meta.emplace_back("h", format_double(cfg.h));
  t.meta.emplace_back("window_m", std::to_string(cfg.window_m));
  t.meta.emplace_back("window_n", std::to_string(cfg.window_n));
  t.meta.emplace_back("dim", std::to_string(b.matrix.dim()));
  t.meta.emplace_back("shift", format_double(b.shift));
  if (region) {
    t.meta.emplace_back("region_re_lo", format_double(region->re_lo));
    t.meta.emplace_back("region_re_hi", format_double(region->re_hi));
    t.meta.emplace_back("region_im_lo", format_double(region->im_lo));
    t.meta.emplace_back("region_im_hi", format_double(region->im_hi));
  }
  t.meta.emplace_back("grid_nx", std::to_string(cfg.grid_nx));
  t.meta.emplace_back("grid_ny", std::to_string(cfg.grid_ny));
  t.meta.emplace_back("samples", std::to_string(cfg.samples));
  t.meta.emplace_back("tol", format_double(cfg.tol));
  t.meta.emplace_back("max_depth", std::to_string(cfg.max_depth));
  t.meta.emplace_back("anchor", std::to_string(anchor));
  t.meta.emplace_back("seed", std::to_string(cfg.seed));
}

SecularFn secular_fn(const ModelBundle& b, long anchor, const CfOptions& cf) {
  const CoefficientSource source = b.source;
  return [source, anchor, cf](Complex z) { return secular_value(source, z, anchor, cf).value; };
}

SecularFn determinant_fn(const ModelBundle& b, const CfOptions& cf) {
  const CoefficientSource source = b.source;
  return [source, cf](Complex z) { return determinant_cf(source, z, cf); };
}

int run_spectrum(const RunConfig& cfg, bool compare_tables) {
  const ModelBundle b = build_model(cfg);
  const CfOptions cf = cf_options(cfg);
  const long anchor = resolve_anchor(cfg, b);
  const SearchRegion region = resolve_region(cfg, b);

  RootOptions opts;
  opts.grid_nx = cfg.grid_nx;
  opts.grid_ny = cfg.grid_ny;
  if (b.bounded) opts.winding_fn = determinant_fn(b, cf);
  const SpectrumResult res = locate_roots(secular_fn(b, anchor, cf), region, opts);

  std::vector<Complex> located;
  for (const RootRecord& r : res.roots) located.push_back(r.z);

  int code = 0;
  bool verified = false;
  RootMatch match;
  const bool oracle_ok = b.bounded && b.matrix.dim() <= kOracleMaxDim;
  if ((cfg.verify || compare_tables) && !oracle_ok) {
    if (compare_tables)
      throw std::invalid_argument(
          "oracle-compare needs a bounded model with dim <= " + std::to_string(kOracleMaxDim));
    std::cerr << "verify: skipped (needs a bounded model with dim <= " << kOracleMaxDim << ")\n";
  }
  std::vector<Complex> oracle;
  if ((cfg.verify || compare_tables) && oracle_ok) {
    RootOptions oracle_opts = opts;
    oracle_opts.winding_fn = nullptr;  // the determinant is already pole-free
    oracle = det_scan_spectrum(b.matrix, region, oracle_opts);
    match = match_roots(located, oracle);
    verified = true;
    if (!(match.complete && match.max_distance <= cfg.tol)) code = 1;
  }

  OutputTable t;
  push_common_meta(t, compare_tables ? "oracle-compare" : "spectrum", cfg, b, &region, anchor);
  t.meta.emplace_back("roots_found", std::to_string(res.roots.size()));
  t.meta.emplace_back("count_by_winding", std::to_string(res.count_by_winding));
  t.meta.emplace_back("cluster_warning", res.cluster_warning ? "1" : "0");
  t.meta.emplace_back("min_pair_distance", format_double(res.min_pair_distance));
  if (verified) {
    t.meta.emplace_back("oracle_roots", std::to_string(oracle.size()));
    t.meta.emplace_back("oracle_match_complete", match.complete ? "1" : "0");
    t.meta.emplace_back("oracle_max_distance", format_double(match.max_distance));
  }

  if (compare_tables) {
    t.columns = {"cf_re", "cf_im", "oracle_re", "oracle_im", "distance"};
    for (const auto& [i, j] : match.pairs)
      t.rows.push_back({located[i].real(), located[i].imag(), oracle[j].real(), oracle[j].imag(),
                        std::abs(located[i] - oracle[j])});
  } else {
    t.columns = {"re", "im", "re_physical", "im_physical", "residual", "newton_iters",
                 "multiplicity_hint"};
    for (const RootRecord& r : res.roots)
      t.rows.push_back({r.z.real(), r.z.imag(), r.z.real() + b.shift, r.z.imag(), r.residual,
                        static_cast<double>(r.newton_iters),
                        static_cast<double>(r.multiplicity_hint)});
  }
  write_output(t, cfg.out_path, cfg.format);

  if (res.cluster_warning)
    std::cerr << "warning: root pair closer than the cluster threshold; nearby roots may be "
                 "degenerate or near-defective\n";
  return code;
}

int run_singular(const RunConfig& cfg) {
  const ModelBundle b = build_model(cfg);
  SingularOptions so;
  so.cf = cf_options(cfg);
  so.samples = cfg.samples;
  const SingularValueResult res = singular_values(b.matrix, so);

  int code = 0;
  bool verified = false;
  double worst = 0.0;
  if (cfg.verify) {
    if (b.matrix.dim() > kOracleMaxDim) {
      std::cerr << "verify: skipped (dim > " << kOracleMaxDim << ")\n";
    } else {
      const std::vector<double> oracle = svd_oracle(to_dense(b.matrix));
      // Set-distance between the located values and the reference multiset:
      // the scan reports each distinct value once, the oracle with
      // multiplicity, so compare nearest neighbours both ways.
      const auto nearest = [](double x, const std::vector<double>& v) {
        double best = std::numeric_limits<double>::infinity();
        for (double y : v) best = std::min(best, std::abs(x - y));
        return best;
      };
      for (double s : oracle) worst = std::max(worst, nearest(s, res.sigma));
      for (double s : res.sigma) worst = std::max(worst, nearest(s, oracle));
      if (res.sigma.empty() && !oracle.empty()) worst = std::numeric_limits<double>::infinity();
      verified = true;
      if (!(worst <= cfg.tol)) code = 1;
    }
  }

  OutputTable t;
  push_common_meta(t, "singular", cfg, b, nullptr, 0);
  t.meta.emplace_back("sigma_max", format_double(res.sigma_max));
  t.meta.emplace_back("values_found", std::to_string(res.sigma.size()));
  t.meta.emplace_back("cluster_warning", res.cluster_warning ? "1" : "0");
  if (verified) t.meta.emplace_back("oracle_max_distance", format_double(worst));
  t.columns = {"sigma"};
  for (double s : res.sigma) t.rows.push_back({s});
  write_output(t, cfg.out_path, cfg.format);

  for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
  return code;
}

int run_wavefunction(const RunConfig& cfg) {
  const ModelBundle b = build_model(cfg);
  const CfOptions cf = cf_options(cfg);
  const long anchor = resolve_anchor(cfg, b);
  const Complex energy(cfg.energy_re, cfg.energy_im);

  const WavefunctionResult w = wavefunction(b.matrix, energy, anchor, cf);
  int code = w.residual <= cfg.tol ? 0 : 1;

  OutputTable t;
  push_common_meta(t, "wavefunction", cfg, b, nullptr, anchor);
  t.meta.emplace_back("energy_re", format_double(cfg.energy_re));
  t.meta.emplace_back("energy_im", format_double(cfg.energy_im));
  t.meta.emplace_back("residual", format_double(w.residual));
  if (cfg.verify) {
    const WavefunctionResult lw = left_wavefunction(b.matrix, energy, anchor, cf);
    t.meta.emplace_back("left_residual", format_double(lw.residual));
    if (!(lw.residual <= cfg.tol)) code = 1;
  }
  t.columns = {"index", "re", "im", "abs"};
  for (std::size_t i = 0; i < w.psi.size(); ++i)
    t.rows.push_back({static_cast<double>(w.lo + static_cast<long>(i)), w.psi[i].real(),
                      w.psi[i].imag(), std::abs(w.psi[i])});
  write_output(t, cfg.out_path, cfg.format);
  return code;
}

int run_green_grid(const RunConfig& cfg) {
  const ModelBundle b = build_model(cfg);
  const CfOptions cf = cf_options(cfg);
  const long anchor = resolve_anchor(cfg, b);
  const SearchRegion region = resolve_region(cfg, b);

  const CoefficientSource source = b.source;
  const SecularFn fn = [source, anchor, cf](Complex z) {
    return green_diagonal(source, z, anchor, cf).value;
  };
  const GridSpec g{region, cfg.grid_nx, cfg.grid_ny};
  const std::vector<Complex> vals = eval_grid(fn, g);

  OutputTable t;
  push_common_meta(t, "green-grid", cfg, b, &region, anchor);
  t.columns = {"re", "im", "g_re", "g_im", "g_abs"};
  for (long iy = 0; iy < g.ny; ++iy)
    for (long ix = 0; ix < g.nx; ++ix) {
      const Complex z = g.point(ix, iy);
      const Complex v = vals[iy * g.nx + ix];
      t.rows.push_back({z.real(), z.imag(), v.real(), v.imag(), std::abs(v)});
    }
  write_output(t, cfg.out_path, cfg.format);
  return 0;
}

int run_factor_check(const RunConfig& cfg) {
  const ModelBundle b = build_model(cfg);
  const CfOptions cf = cf_options(cfg);
  const Complex z(cfg.z_re, cfg.z_im);
  const FiniteTridiagonal& h = b.matrix;

  DenseMatrix target = to_dense(h);
  for (std::size_t i = 0; i < target.n; ++i) target.at(i, i) -= z;
  const double target_scale = std::max(1.0, max_abs(target));

  const auto check = [&](long anchor) {
    const UflFactors fac = factorize(h, z, anchor, cf);
    const DenseMatrix recon =
        multiply(multiply(outer_factor_dense(fac), pivot_factor_dense(fac)),
                 inner_factor_dense(fac));
    return std::pair<double, Complex>(max_abs(subtract(recon, target)) / target_scale,
                                      determinant(fac));
  };
  const long center = h.lo() + static_cast<long>(h.dim()) / 2;
  const auto [rel_low, det_low] = check(h.lo());
  const auto [rel_center, det_center] = check(center);

  double det_rel_low = -1.0, det_rel_center = -1.0;
  if (h.dim() <= kOracleMaxDim) {
    const Complex det_ref = lu_det(target);
    const double scale = std::max(std::abs(det_ref), 1e-300);
    det_rel_low = std::abs(det_low - det_ref) / scale;
    det_rel_center = std::abs(det_center - det_ref) / scale;
  }

  int code = (rel_low <= cfg.tol && rel_center <= cfg.tol) ? 0 : 1;
  if (det_rel_low >= 0.0 && !(det_rel_low <= cfg.tol && det_rel_center <= cfg.tol)) code = 1;

  OutputTable t;
  push_common_meta(t, "factor-check", cfg, b, nullptr, center);
  t.meta.emplace_back("z_re", format_double(cfg.z_re));
  t.meta.emplace_back("z_im", format_double(cfg.z_im));
  t.columns = {"recon_rel_low", "recon_rel_center", "det_rel_low", "det_rel_center"};
  t.rows.push_back({rel_low, rel_center, det_rel_low, det_rel_center});
  write_output(t, cfg.out_path, cfg.format);
  return code;
}

int run_models() {
  for (const auto& [name, desc] : model_catalog()) std::cout << name << ": " << desc << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continued-fraction spectra, singular values and wavefunctions of "
               "complex tridiagonal operators"};
  app.require_subcommand(1);
  int exit_code = 0;

  const auto ctx_spectrum = std::make_shared<SubContext>();
  const auto ctx_singular = std::make_shared<SubContext>();
  const auto ctx_wave = std::make_shared<SubContext>();
  const auto ctx_green = std::make_shared<SubContext>();
  const auto ctx_factor = std::make_shared<SubContext>();
  const auto ctx_compare = std::make_shared<SubContext>();

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "locate complex eigenvalues in a search region");
  bind_common(spectrum, *ctx_spectrum);
  spectrum->callback([&exit_code, ctx_spectrum]() {
    finalize(*ctx_spectrum);
    exit_code = run_spectrum(ctx_spectrum->cfg, false);
  });

  CLI::App* singular =
      app.add_subcommand("singular", "real singular values via the 2x2 block pipeline");
  bind_common(singular, *ctx_singular);
  singular->callback([&exit_code, ctx_singular]() {
    finalize(*ctx_singular);
    exit_code = run_singular(ctx_singular->cfg);
  });

  CLI::App* wave = app.add_subcommand("wavefunction", "null vector of H - E at a given energy");
  bind_common(wave, *ctx_wave);
  wave->add_option("--energy", ctx_wave->energy, "target energy re im")
      ->expected(2)
      ->required();
  wave->callback([&exit_code, ctx_wave]() {
    finalize(*ctx_wave);
    exit_code = run_wavefunction(ctx_wave->cfg);
  });

  CLI::App* green =
      app.add_subcommand("green-grid", "diagonal resolvent entry sampled over a grid");
  bind_common(green, *ctx_green);
  green->callback([&exit_code, ctx_green]() {
    finalize(*ctx_green);
    exit_code = run_green_grid(ctx_green->cfg);
  });

  CLI::App* factor = app.add_subcommand(
      "factor-check", "reassemble H - z from its triangular factors and report the error");
  bind_common(factor, *ctx_factor);
  factor->add_option("--z", ctx_factor->z, "probe point re im")->expected(2);
  factor->callback([&exit_code, ctx_factor]() {
    finalize(*ctx_factor);
    exit_code = run_factor_check(ctx_factor->cfg);
  });

  CLI::App* compare = app.add_subcommand(
      "oracle-compare", "side-by-side table of located roots and the dense reference spectrum");
  bind_common(compare, *ctx_compare);
  compare->callback([&exit_code, ctx_compare]() {
    finalize(*ctx_compare);
    ctx_compare->cfg.verify = true;
    exit_code = run_spectrum(ctx_compare->cfg, true);
  });

  CLI::App* models = app.add_subcommand("models", "list available models");
  models->callback([&exit_code]() { exit_code = run_models(); });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config_tokens(args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes tokens back to front
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
