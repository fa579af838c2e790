#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperbox {

// Class labels are positive integers; 0 marks an unlabeled sample or box.
using ClassLabel = int;
inline constexpr ClassLabel kUnlabeled = 0;

// Width assigned to zero-width edges when computing tie-break volumes.
inline constexpr double kDegenerateWidth = 1e-12;

inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

/// A sample with per-feature [lower, upper] bounds. A point sample has
/// lower == upper; a wholly absent feature stores NaN in both bounds.
struct IntervalSample {
  std::vector<double> lower;
  std::vector<double> upper;

  IntervalSample() = default;
  IntervalSample(std::vector<double> lo, std::vector<double> hi);

  static IntervalSample point(std::vector<double> values);

  std::size_t size() const { return lower.size(); }
  bool missing(std::size_t j) const { return is_missing(lower[j]); }
  bool is_point() const;
  bool fully_observed() const;

  // Enforces bound pairing (a feature is wholly missing or wholly present)
  // and lower <= upper. Values need not be in [0,1]; trainers check that.
  void validate() const;
};

struct LabeledSample {
  IntervalSample sample;
  ClassLabel label = kUnlabeled;
};

using Dataset = std::vector<LabeledSample>;

/// Axis-aligned box in [0,1]^n. An unset dimension (grown from a missing
/// feature) is encoded exactly as min 1, max 0; no other inverted pair is
/// legal.
struct Hyperbox {
  std::vector<double> min_vertex;
  std::vector<double> max_vertex;
  ClassLabel label = kUnlabeled;
  std::int64_t sample_count = 0;
  int id = -1;

  std::size_t dims() const { return min_vertex.size(); }
  bool dim_set(std::size_t j) const { return min_vertex[j] <= max_vertex[j]; }
  double width(std::size_t j) const { return max_vertex[j] - min_vertex[j]; }

  // Product of edge widths over set dimensions; zero-width edges count as
  // kDegenerateWidth so degenerate boxes still order by volume.
  double volume() const;

  static Hyperbox from_sample(const IntervalSample& x, ClassLabel label, int id);

  void validate() const;
};

enum class MembershipKind { Gfmm, Fmnn };

/// Single-model training algorithms plus the ensemble combiners built on
/// top of them. TrainedModel carries one of the first four.
enum class Algorithm {
  OnlnGfmm,
  IolGfmm,
  Fmnn,
  Agglo2,
  Bagging,
  BaggingModelLevel,
  RandomHyperboxes,
};

bool is_single_model(Algorithm a);
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct ModelParams {
  double theta = 0.1;
  // One entry broadcasts to every feature; otherwise one entry per feature.
  std::vector<double> gamma{1.0};
  MembershipKind membership = MembershipKind::Gfmm;

  double gamma_at(std::size_t j) const {
    return gamma.size() == 1 ? gamma[0] : gamma[j];
  }

  void validate(std::size_t n_features) const;
};

/// Per-feature min/range state of the [0,1] scaler. A zero range marks a
/// constant feature, which maps to 0.5 on transform.
struct ScalerState {
  std::vector<double> feature_min;
  std::vector<double> feature_range;

  std::size_t size() const { return feature_min.size(); }
  void validate() const;
};

/// Column names and the label-name-to-id map of an ingested dataset.
/// Ids are assigned in first-appearance order starting at 1; an empty
/// label cell maps to kUnlabeled.
struct DatasetSchema {
  std::vector<std::string> feature_names;
  std::string label_column;
  std::map<std::string, ClassLabel> class_ids;

  std::size_t n_features() const { return feature_names.size(); }
  const std::string* class_name(ClassLabel id) const;
  // Name if known, otherwise the numeric id; empty string for unlabeled.
  std::string display_label(ClassLabel id) const;
  void validate() const;
};

struct TrainedModel {
  Algorithm algorithm = Algorithm::OnlnGfmm;
  ModelParams params;
  int n_features = 0;
  std::vector<Hyperbox> boxes;
  std::set<ClassLabel> classes;  // non-unlabeled labels seen during training
  std::optional<ScalerState> scaler;
  std::optional<DatasetSchema> schema;
  int next_box_id = 0;

  int fresh_box_id() { return next_box_id++; }
};

}  // namespace hyperbox
