#pragma once

#include "hyperbox/agglo.hpp"
#include "hyperbox/online.hpp"

namespace hyperbox {

/// Flat description of a training run: which algorithm, its parameters, and
/// the knobs of whichever family it belongs to. Ensemble kinds use the
/// single-model fields to configure their base learner.
struct LearnerSpec {
  Algorithm algorithm = Algorithm::OnlnGfmm;
  ModelParams params;

  // online knobs
  int epochs = 1;
  std::optional<std::uint64_t> shuffle_seed;
  std::optional<double> theta_min;
  std::optional<double> theta_decay;

  // agglomerative knobs
  double sigma_min = 0.0;
  SimilarityKind similarity = SimilarityKind::LongestGap;

  // ensemble knobs
  Algorithm base_algorithm = Algorithm::OnlnGfmm;
  int members = 10;
  double sample_rate = 1.0;
  std::uint64_t seed = 0;

  OnlineFitConfig online_config() const;
  AggloConfig agglo_config() const;
  // The spec of the base learner an ensemble kind would train.
  LearnerSpec base_spec() const;

  void validate() const;
};

/// Trains one single-model algorithm (the ensemble kinds are rejected;
/// see fit_any in ensemble.hpp for those).
TrainedModel fit_single(const Dataset& data, const LearnerSpec& spec);

}  // namespace hyperbox
