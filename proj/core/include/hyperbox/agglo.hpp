#pragma once

#include "hyperbox/core.hpp"

namespace hyperbox {

enum class SimilarityKind { LongestGap, MidDistance };

std::string to_string(SimilarityKind k);
SimilarityKind similarity_from_string(const std::string& s);

struct AggloConfig {
  ModelParams params;
  double sigma_min = 0.0;  // minimum similarity for a merge
  SimilarityKind similarity = SimilarityKind::LongestGap;

  void validate(std::size_t n_features) const;
};

/// Similarity in [0,1] between two fully set boxes. LongestGap maps the
/// largest per-feature gap between the boxes through the membership ramp
/// (identical boxes score 1, a gap of 1/gamma scores 0). MidDistance is the
/// membership of each box's midpoint in the other, taking the worse side.
double box_similarity(const Hyperbox& a, const Hyperbox& b,
                      const std::vector<double>& gamma, SimilarityKind kind);

/// Agglomerative full-batch learner: one point box per sample, then repeated
/// merging of the most similar label-compatible pair whose hull stays within
/// theta and overlaps no box of another class. A pair failing the constraint
/// is set aside until the next successful merge changes the geometry; the
/// loop stops when no admissible pair at or above sigma_min remains.
TrainedModel fit_agglo2(const Dataset& data, const AggloConfig& cfg);

/// The merge loop of fit_agglo2 over caller-supplied starting boxes (used to
/// combine the hyperboxes pooled from several models into one). Boxes must
/// carry unique ids and positive counts.
TrainedModel agglo_merge_boxes(std::vector<Hyperbox> boxes, const AggloConfig& cfg,
                               int n_features);

}  // namespace hyperbox
