#pragma once

#include <optional>

#include "hyperbox/types.hpp"

namespace hyperbox {

/// Ramp-threshold membership of an interval sample in a box: the minimum
/// over features of how well the sample fits between the box faces, where
/// fit decays linearly with distance at slope gamma and saturates at 0.
/// Unset box dimensions and missing sample features are neutral (fit 1);
/// if every dimension is neutral the membership is 1.
double gfmm_membership(const Hyperbox& box, const IntervalSample& x,
                       const std::vector<double>& gamma);

/// Simpson-style averaged membership for point samples: mean over features
/// of the two clipped face fits. Requires a fully observed point sample and
/// a box with no unset dimensions.
double fmnn_membership(const Hyperbox& box, const IntervalSample& x, double gamma);

/// True when growing the box to cover x keeps every edge within theta.
/// Unset box dimensions and missing sample features impose no constraint.
bool is_expandable(const Hyperbox& box, const IntervalSample& x, double theta);

/// Coordinate-wise hull of box and sample. Unset box dimensions adopt the
/// sample's bounds, features missing from the sample leave the box alone.
/// Increments sample_count; an unlabeled box adopts a labeled sample's label.
Hyperbox expand(Hyperbox box, const IntervalSample& x,
                ClassLabel sample_label = kUnlabeled);

struct OverlapInfo {
  std::size_t dim = 0;
  double delta = 0.0;
  int kase = 0;  // 1..4, see contract()
};

/// Detects interval intersection between two boxes.
///
/// Returns nullopt when some dimension separates the boxes: either box is
/// unset there, their intervals have an empty interior intersection, or they
/// merely touch at a boundary point. A zero-width interval lying strictly
/// inside the other box still counts as an overlap (it must, or a trial
/// expansion could swallow a point box of another class undetected).
///
/// Otherwise every dimension overlaps and the result names the dimension
/// with the smallest positive overlap delta (ties go to the lowest index):
///   case 1  a leads b:      delta = a.max - b.min
///   case 2  b leads a:      delta = b.max - a.min
///   case 3  b inside a:     delta = min(b.max - a.min, a.max - b.min)
///   case 4  a inside b:     delta = min(b.max - a.min, a.max - b.min)
std::optional<OverlapInfo> overlap_test(const Hyperbox& a, const Hyperbox& b);

/// Removes the overlap between a and b along one dimension, per the case
/// reported by overlap_test: partial overlaps split at the midpoint (both
/// boxes move), containment cases move only the face needing the smaller
/// adjustment. Throws if (dim, kase) does not match the geometry.
void contract(Hyperbox& a, Hyperbox& b, std::size_t dim, int kase);

struct Prediction {
  ClassLabel label = kUnlabeled;
  double membership = 0.0;
  int box_id = -1;
  std::size_t box_index = 0;
};

/// Winner-takes-all classification: evaluates the model's membership kind
/// for every box and returns the argmax. Ties break by higher sample count,
/// then smaller volume, then lower box id. Unlabeled boxes compete only
/// when the model has no labeled box at all.
Prediction predict(const TrainedModel& model, const IntervalSample& x);

/// True when candidate beats incumbent under the deterministic tie chain
/// (sample count, volume, id) used by predict at equal membership.
bool wins_tie(const Hyperbox& candidate, const Hyperbox& incumbent);

/// Positive-interior intersection between two boxes of distinct non-unlabeled
/// classes; the model invariant forbids it. Dimensions where either box is
/// unset separate the pair.
bool interclass_interior_overlap(const Hyperbox& a, const Hyperbox& b);

/// Full structural check: box invariants, dimensionality, unique ids,
/// positive counts, parameter ranges, and pairwise inter-class non-overlap.
void validate_model(const TrainedModel& m);

}  // namespace hyperbox
