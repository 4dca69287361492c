#pragma once

#include <vector>

#include "lhk/atoms.hpp"
#include "lhk/config.hpp"
#include "lhk/report.hpp"

namespace lhk::harness {

/// Section-2 identities: Plancherel, Riemann-Lebesgue, eigenrelation,
/// dilation covariance, convolution theorem, golden transform values,
/// measures, translation identity and character multiplicativity.
EstimateReport verify_core(const Config& cfg);

/// Hardy-space estimates: atom construction/validation over the radius sweep,
/// molecular norms, transform derivative bounds, near-origin decay, Paley,
/// Pitt and the weak-type inequality.
EstimateReport verify_hp(const Config& cfg);

/// Spectral multipliers: Mihlin/Hormander condition checkers, identity and
/// unimodular metrics, molecular norms of T_M a over the radius sweep, and
/// the vanishing-moment transfer.
EstimateReport verify_multiplier(const Config& cfg);

std::vector<EstimateReport> verify_all(const Config& cfg);

/// Atoms with scale-covariant grids as the suites build them.
atoms::Atom build_suite_atom(const Config& cfg, double p, int s, double r);
quad::SpecPtr atom_spectral_grid(const Config& cfg, double r);

/// Applies the LHK_THREADS cap when OpenMP is in use.
void apply_thread_cap();

} // namespace lhk::harness
