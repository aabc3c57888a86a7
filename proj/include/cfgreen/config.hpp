#pragma once

#include <string>
#include <vector>

#include "cfgreen/models.hpp"
#include "cfgreen/types.hpp"

namespace cfgreen {

/// Resolved run parameters shared by the CLI subcommands.  Defaults are the
/// documented CLI defaults; the CLI layer overrides from flags/config file.
struct RunConfig {
  std::string model = "bose-hubbard";
  long n_bosons = 2;
  double gamma = 0.5;
  double interaction = 0.0;
  double eta = 1.0;
  double h = 0.02;
  long window_m = 400;  ///< lattice sites below 0 (schrodinger) / rows kept (growing-tail)
  long window_n = 400;  ///< lattice sites above 0
  std::vector<double> region;  ///< empty or {re_lo, re_hi, im_lo, im_hi}
  long grid_nx = 81;
  long grid_ny = 81;
  long samples = 4001;
  double tol = 1e-10;
  long max_depth = 1000000;
  bool verify = false;
  std::string out_path;        ///< empty: stdout
  std::string format = "csv";  ///< csv | json
  unsigned long seed = 0;      ///< echoed into outputs; reserved for stochastic strategies
  double energy_re = 0.0, energy_im = 0.0;  ///< wavefunction target
  double z_re = 0.0, z_im = 0.0;            ///< factor-check probe point
  std::string anchor = "auto";              ///< auto | low | center
};

/// A model instantiated from a RunConfig: matrix snapshot (possibly a
/// truncation of an unbounded family), its coefficient source, and the
/// energy shift to add when reporting physical values.
struct ModelBundle {
  FiniteTridiagonal matrix;
  CoefficientSource source;
  double shift = 0.0;
  bool bounded = true;
  std::string description;
};

/// Throws std::invalid_argument on unknown model names or bad parameters.
ModelBundle build_model(const RunConfig& cfg);

/// Names accepted by build_model, with one-line descriptions.
std::vector<std::pair<std::string, std::string>> model_catalog();

}  // namespace cfgreen
