#pragma once

#include <variant>

#include "hyperbox/learner.hpp"

namespace hyperbox {

enum class Aggregation { MajorityVote };

/// Bagged or random-subspace collection of trained models. Members hold
/// boxes in their own (possibly projected) feature space; feature_subsets
/// maps each member back to the ingestion space.
struct EnsembleModel {
  Algorithm kind = Algorithm::Bagging;  // Bagging or RandomHyperboxes
  std::vector<TrainedModel> members;
  std::vector<std::vector<int>> feature_subsets;  // sorted, full range for bagging
  Aggregation aggregation = Aggregation::MajorityVote;
  std::uint64_t seed = 0;
  int n_features = 0;
  std::set<ClassLabel> classes;
  std::optional<ScalerState> scaler;
  std::optional<DatasetSchema> schema;
};

/// Decision-level bagging: `members` bootstrap resamples of size
/// sample_rate * N (with replacement, member i seeded with seed + i), each
/// training one base model on the full feature range.
EnsembleModel fit_bagging(const Dataset& data, const LearnerSpec& base, int members,
                          double sample_rate, std::uint64_t seed);

/// Random-subspace ensemble: member i draws a feature subset of size m,
/// m uniform in [max(1, floor(sqrt(n))), n-1], then trains the base learner
/// on a bootstrap resample projected to that subset.
EnsembleModel fit_random_hyperboxes(const Dataset& data, const LearnerSpec& base,
                                    int members, double sample_rate,
                                    std::uint64_t seed);

struct EnsemblePrediction {
  ClassLabel label = kUnlabeled;
  int votes = 0;
  double summed_membership = 0.0;
};

/// Majority vote over member predictions on x restricted to each member's
/// subset; ties break by greater summed winning membership, then lower
/// class id.
EnsemblePrediction predict_ensemble(const EnsembleModel& e, const IntervalSample& x);

/// Pools every member's hyperboxes (bounds as interval samples, labels and
/// counts kept) and runs the agglomerative merge loop over them, collapsing
/// the ensemble into one model. Members must share dimensionality and use
/// the gfmm membership kind.
TrainedModel merge_models(const std::vector<TrainedModel>& members,
                          const AggloConfig& cfg);

void validate_ensemble(const EnsembleModel& e);

using FittedModel = std::variant<TrainedModel, EnsembleModel>;

/// Trains whatever the spec names, including the ensemble kinds
/// (bagging-model-level bags GFMM members and merges them into one model).
FittedModel fit_any(const Dataset& data, const LearnerSpec& spec);

struct AnyPrediction {
  ClassLabel label = kUnlabeled;
  // Winning membership for single models, winning vote fraction for ensembles.
  double confidence = 0.0;
};

AnyPrediction predict_any(const FittedModel& model, const IntervalSample& x);

int fitted_n_features(const FittedModel& model);
std::size_t fitted_box_count(const FittedModel& model);

}  // namespace hyperbox
