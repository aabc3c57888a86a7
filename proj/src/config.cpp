#include "cfgreen/config.hpp"

#include <stdexcept>

namespace cfgreen {

namespace {

ModelBundle from_matrix(FiniteTridiagonal m, double shift, std::string description) {
  ModelBundle b;
  b.matrix = std::move(m);
  b.source = as_source(b.matrix);
  b.shift = shift;
  b.bounded = true;
  b.description = std::move(description);
  return b;
}

}  // namespace

ModelBundle build_model(const RunConfig& cfg) {
  if (cfg.model == "bose-hubbard")
    return from_matrix(bose_hubbard(cfg.n_bosons, cfg.gamma, cfg.interaction), 0.0,
                       "Bose-Hubbard-like chain");
  if (cfg.model == "non-bh-k5")
    return from_matrix(non_bh_k5(cfg.gamma), 0.0, "five-state non-Bose-Hubbard chain");
  if (cfg.model == "schrodinger-harmonic" || cfg.model == "schrodinger-double-well" ||
      cfg.model == "schrodinger-complex-quartic") {
    PotentialSpec spec;
    if (cfg.model == "schrodinger-harmonic")
      spec.kind = PotentialKind::HarmonicTest;
    else if (cfg.model == "schrodinger-double-well")
      spec.kind = PotentialKind::DoubleWell;
    else {
      spec.kind = PotentialKind::ComplexQuartic;
      spec.eta = cfg.eta;
    }
    DiscretizedOperator op = discrete_schrodinger(spec, cfg.h, cfg.window_m, cfg.window_n);
    return from_matrix(std::move(op.matrix), op.shift, "discretized Schrodinger operator");
  }
  if (cfg.model == "growing-tail") {
    ModelBundle b;
    b.source = growing_tail_source();
    b.matrix = truncate(b.source, 0, std::max<long>(cfg.window_n, 8));
    b.shift = 0.0;
    b.bounded = false;
    b.description = "semi-infinite synthetic recurrence (matrix is a truncation)";
    return b;
  }
  throw std::invalid_argument("unknown model: " + cfg.model);
}

std::vector<std::pair<std::string, std::string>> model_catalog() {
  return {
      {"bose-hubbard",
       "chain with n-bosons+1 states; --gamma sets the imaginary diagonal, --interaction an "
       "optional real one"},
      {"non-bh-k5", "fixed five-state chain with mixed couplings, scaled by --gamma"},
      {"schrodinger-harmonic", "x^2 potential discretized with --h on [-m, n] (--window)"},
      {"schrodinger-double-well", "x^2(x-1)^2 - x + 1/2 potential, same discretization flags"},
      {"schrodinger-complex-quartic", "-(x-i eta)^4/4 + (x-i eta)^2/4 potential; --eta > 0"},
      {"growing-tail", "semi-infinite recurrence a_n = n, b_n = 4n^2, c_{n+1} = -n on [1, inf)"},
  };
}

}  // namespace cfgreen
