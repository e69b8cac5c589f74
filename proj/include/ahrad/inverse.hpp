#pragma once
#include <string>
#include <vector>

#include "ahrad/radiation.hpp"
#include "ahrad/scattering.hpp"

namespace ahrad {

/// P^b_{x1}: F in M^b -> backward field of the data sharply truncated to
/// {x >= x1} (truncation aligned to data-grid cell boundaries).
RadiationField truncate_project(const WarpedMetric& m, const RadiationField& F,
                                double x1, const GridSpec& grid,
                                const XGrid& xg, double inv_tol = 0.0,
                                int jobs = 1);

/// Snaps x1 to the data grid (the value actually used by the projector).
double align_x1(const XGrid& g, double x1);

struct JumpMeasurement {
  double x1 = 0.0;
  std::vector<ModeKey> ks;
  ArrayXcd J;          // fitted jump amplitude per mode
  ArrayXcd w_at_x1;    // mollified data w(x1) per mode, from the inversion
  double fit_residual = 0.0;
  int skip = 0, width = 0;
};

struct JumpFitSpec {
  double mollifier_eps = 0.05;
  int skip = 4;     // smeared samples dropped right after the jump
  int width = 24;   // fit samples (8..32 per the window rule)
  double inv_tol = 0.0;
};

/// Lemma-8.3 pipeline: G = phi * F, apply scattering_apply o truncate_project,
/// then one-sided-fit the output near s = log x1 as c0 + c1 (s - log x1) +
/// background; returns c0 per mode.
JumpMeasurement jump_amplitude(const WarpedMetric& m, const RadiationField& F,
                               double x1, const GridSpec& grid,
                               const XGrid& xg, const JumpFitSpec& spec = {},
                               int jobs = 1);

/// Closed-form boundary amplitude (1/2) x1^{-n/2} |h|^{1/4}(x1)/|h|^{1/4}(0)
/// applied to w(x1).
ArrayXcd predicted_jump(const WarpedMetric& m, const ArrayXcd& w_at_x1,
                        double x1);

/// First transport coefficient: integrates x1(2 d/dx + A) v = 0 from
/// v(x1) = (1/2) x1^{-n/2-1} w(x1) down to x, on a uniform grid over [lo, x1].
ArrayXcd transport_v1(const WarpedMetric& m, double x1, cplx w_at_x1,
                      double lo, int n_samples);

/// The closed form the ODE must reproduce.
cplx transport_v1_exact(const WarpedMetric& m, double x, double x1,
                        cplx w_at_x1);

struct SupportRoundtrip {
  double s_star = 0.0;   // +inf sentinel when the field vanishes
  double x_star = 0.0;   // inf of the data support
  double mismatch = 0.0; // |e^{s*} - x*|
};

SupportRoundtrip support_roundtrip(const WarpedMetric& m, const CauchyData& d,
                                   const GridSpec& grid, int jobs = 1);

struct RecoverReport {
  std::vector<double> x1;
  std::vector<double> j_rel_diff;   // between the two metrics, per x1
  std::vector<double> j_rel_err;    // measured vs predicted, metric 1
  double scattering_diff = 0.0;     // max |a1 - a2| over probes/modes/lambda
  double probe_consistency = 0.0;   // max spread of J_meas/J_pred over probes
  std::string verdict;              // "equal" | "differ"
  double first_diff_x1 = -1.0;      // -1 encodes null
};

struct RecoverSpec {
  double tol_scatter = 5e-3;  // verdict threshold on |a1 - a2|
  double tol_jump = 0.02;     // flags the first x1 whose profiles differ
  double tol_probe = 0.05;    // InconsistentProbes threshold
  JumpFitSpec fit;
  ArrayXd lambda;             // grid for the dynamic a_k comparison
  std::vector<ModeKey> ks;    // modes entering the a_k comparison
};

/// Runs the jump pipeline on both metrics for a shared family of probe data
/// and an x1 ladder; declares the metrics equal/different per the scattering
/// comparison and reports where the extracted profiles first disagree.
RecoverReport recover_profile(const WarpedMetric& m1, const WarpedMetric& m2,
                              const std::vector<CauchyData>& probes,
                              const std::vector<double>& x1_ladder,
                              const GridSpec& grid, const XGrid& xg,
                              const RecoverSpec& spec, int jobs = 1);

}  // namespace ahrad
