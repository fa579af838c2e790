#pragma once

#include <cstdint>
#include <optional>

#include "hyperbox/core.hpp"

namespace hyperbox {

/// Knobs shared by the instance-incremental trainers. With epochs > 1 the
/// model is rebuilt from scratch each pass at a reduced edge budget
/// (theta *= theta_decay per pass, floored at theta_min), so the final
/// model always honours the last pass's theta.
struct OnlineFitConfig {
  ModelParams params;
  int epochs = 1;
  std::optional<std::uint64_t> shuffle_seed;  // presentation order kept if unset
  std::optional<double> theta_min;
  std::optional<double> theta_decay;

  void validate(std::size_t n_features) const;
  double theta_for_epoch(int epoch) const;  // epoch counted from 0
};

/// Incremental GFMM trainer: absorb contained samples, otherwise expand the
/// best-fitting compatible box within theta, then contract away any overlap
/// created with boxes of other classes; failing that, seed a new box.
TrainedModel fit_onln_gfmm(const Dataset& data, const OnlineFitConfig& cfg);

/// Overlap-avoiding GFMM trainer: like fit_onln_gfmm but never contracts.
/// An expansion (or a label adoption by an unlabeled box) is committed only
/// if the resulting box would overlap no box of another class; otherwise the
/// next-ranked candidate is tried and ultimately a new box is created.
TrainedModel fit_iol_gfmm(const Dataset& data, const OnlineFitConfig& cfg);

/// Simpson-style trainer for fully observed, labeled point data: candidates
/// rank by averaged membership, expansion is gated by the aggregate edge
/// budget sum_j(hull_j) <= n * theta, overlaps contract as in the GFMM flow.
TrainedModel fit_fmnn(const Dataset& data, const OnlineFitConfig& cfg);

/// One online step on an already trained model, dispatched on its algorithm
/// (agglomerative models update under the plain GFMM rule). New labels are
/// added to the class set; existing boxes are never discarded.
TrainedModel partial_fit(TrainedModel model, const IntervalSample& x, ClassLabel label);

}  // namespace hyperbox
