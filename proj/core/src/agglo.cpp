#include "hyperbox/agglo.hpp"

#include <algorithm>
#include <unordered_map>

namespace hyperbox {

namespace {

double ramp(double r, double g) {
  const double rg = r * g;
  if (rg > 1.0) return 1.0;
  if (rg < 0.0) return 0.0;
  return rg;
}

void require_all_set(const Hyperbox& b, const char* what) {
  for (std::size_t j = 0; j < b.dims(); ++j) {
    if (!b.dim_set(j)) {
      throw std::invalid_argument(std::string(what) +
                                  ": boxes with unset dimensions are not supported");
    }
  }
}

IntervalSample midpoint_of(const Hyperbox& b) {
  std::vector<double> mid(b.dims());
  for (std::size_t j = 0; j < b.dims(); ++j) {
    mid[j] = 0.5 * (b.min_vertex[j] + b.max_vertex[j]);
  }
  return IntervalSample::point(std::move(mid));
}

double gamma_at(const std::vector<double>& gamma, std::size_t j) {
  return gamma.size() == 1 ? gamma[0] : gamma[j];
}

// One orientation of the longest-gap score; gaps are negative when the
// boxes meet or overlap, which the ramp clips to a perfect fit.
double longest_gap_score(const Hyperbox& a, const Hyperbox& b,
                         const std::vector<double>& gamma) {
  double s = 1.0;
  for (std::size_t j = 0; j < a.dims(); ++j) {
    const double g = gamma_at(gamma, j);
    const double above = 1.0 - ramp(b.min_vertex[j] - a.max_vertex[j], g);
    const double below = 1.0 - ramp(a.min_vertex[j] - b.max_vertex[j], g);
    s = std::min(s, std::min(above, below));
  }
  return s;
}

struct MergeCandidate {
  double similarity;
  std::size_t i, k;  // indices with boxes[i].id < boxes[k].id
};

Hyperbox hull_of(const Hyperbox& a, const Hyperbox& b) {
  Hyperbox h = a;
  for (std::size_t j = 0; j < h.dims(); ++j) {
    h.min_vertex[j] = std::min(a.min_vertex[j], b.min_vertex[j]);
    h.max_vertex[j] = std::max(a.max_vertex[j], b.max_vertex[j]);
  }
  h.sample_count = a.sample_count + b.sample_count;
  h.label = a.label != kUnlabeled ? a.label : b.label;
  return h;
}

bool hull_admissible(const std::vector<Hyperbox>& boxes, const Hyperbox& hull,
                     std::size_t skip_i, std::size_t skip_k, double theta) {
  for (std::size_t j = 0; j < hull.dims(); ++j) {
    if (hull.width(j) > theta) return false;
  }
  if (hull.label == kUnlabeled) return true;
  for (std::size_t m = 0; m < boxes.size(); ++m) {
    if (m == skip_i || m == skip_k) continue;
    const Hyperbox& other = boxes[m];
    if (other.label == kUnlabeled || other.label == hull.label) continue;
    if (overlap_test(hull, other)) return false;
  }
  return true;
}

}  // namespace

std::string to_string(SimilarityKind k) {
  return k == SimilarityKind::LongestGap ? "longest-gap" : "mid-distance";
}

SimilarityKind similarity_from_string(const std::string& s) {
  if (s == "longest-gap") return SimilarityKind::LongestGap;
  if (s == "mid-distance") return SimilarityKind::MidDistance;
  throw std::invalid_argument("unknown similarity kind: " + s);
}

void AggloConfig::validate(std::size_t n_features) const {
  params.validate(n_features);
  if (params.membership != MembershipKind::Gfmm) {
    throw std::invalid_argument("the agglomerative learner uses the gfmm membership kind");
  }
  if (sigma_min < 0.0 || sigma_min > 1.0) {
    throw std::invalid_argument("sigma_min must lie in [0,1]");
  }
}

double box_similarity(const Hyperbox& a, const Hyperbox& b,
                      const std::vector<double>& gamma, SimilarityKind kind) {
  if (a.dims() != b.dims()) {
    throw std::invalid_argument("box_similarity: dimensionality mismatch");
  }
  require_all_set(a, "box_similarity");
  require_all_set(b, "box_similarity");
  if (kind == SimilarityKind::LongestGap) {
    return std::min(longest_gap_score(a, b, gamma), longest_gap_score(b, a, gamma));
  }
  return std::min(gfmm_membership(a, midpoint_of(b), gamma),
                  gfmm_membership(b, midpoint_of(a), gamma));
}

TrainedModel agglo_merge_boxes(std::vector<Hyperbox> boxes, const AggloConfig& cfg,
                               int n_features) {
  if (boxes.empty()) throw std::invalid_argument("cannot merge an empty box set");
  cfg.validate(static_cast<std::size_t>(n_features));
  int next_id = 0;
  for (const auto& b : boxes) {
    if (b.dims() != static_cast<std::size_t>(n_features)) {
      throw std::invalid_argument("box dimensionality differs from the model");
    }
    require_all_set(b, "agglo_merge_boxes");
    next_id = std::max(next_id, b.id + 1);
  }

  const double theta = cfg.params.theta;
  for (;;) {
    // Candidate pairs sorted best first; rebuilt whenever a merge changes
    // the geometry, which also forgets previously rejected pairs.
    std::vector<MergeCandidate> candidates;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      for (std::size_t k = i + 1; k < boxes.size(); ++k) {
        const Hyperbox& a = boxes[i];
        const Hyperbox& b = boxes[k];
        if (a.label != b.label && a.label != kUnlabeled && b.label != kUnlabeled) {
          continue;
        }
        const double s = box_similarity(a, b, cfg.params.gamma, cfg.similarity);
        if (s < cfg.sigma_min) continue;
        if (a.id <= b.id) {
          candidates.push_back({s, i, k});
        } else {
          candidates.push_back({s, k, i});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](const MergeCandidate& x, const MergeCandidate& y) {
                if (x.similarity != y.similarity) return x.similarity > y.similarity;
                if (boxes[x.i].id != boxes[y.i].id) return boxes[x.i].id < boxes[y.i].id;
                return boxes[x.k].id < boxes[y.k].id;
              });

    bool merged = false;
    for (const MergeCandidate& c : candidates) {
      Hyperbox hull = hull_of(boxes[c.i], boxes[c.k]);
      if (!hull_admissible(boxes, hull, c.i, c.k, theta)) continue;
      hull.id = next_id++;
      const std::size_t hi = std::max(c.i, c.k);
      const std::size_t lo = std::min(c.i, c.k);
      boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(hi));
      boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(lo));
      boxes.push_back(std::move(hull));
      merged = true;
      break;
    }
    if (!merged) break;
  }

  TrainedModel model;
  model.algorithm = Algorithm::Agglo2;
  model.params = cfg.params;
  model.n_features = n_features;
  model.next_box_id = next_id;
  for (const auto& b : boxes) {
    if (b.label != kUnlabeled) model.classes.insert(b.label);
  }
  model.boxes = std::move(boxes);
  return model;
}

TrainedModel fit_agglo2(const Dataset& data, const AggloConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("cannot fit on empty data");
  const std::size_t n = data.front().sample.size();
  if (n == 0) throw std::invalid_argument("samples must have at least one feature");
  std::vector<Hyperbox> boxes;
  boxes.reserve(data.size());
  std::set<ClassLabel> classes;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& row = data[i];
    row.sample.validate();
    if (row.sample.size() != n) {
      throw std::invalid_argument("training samples differ in dimensionality");
    }
    if (!row.sample.fully_observed()) {
      throw std::invalid_argument("the agglomerative learner requires fully observed samples");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row.sample.lower[j] < 0.0 || row.sample.upper[j] > 1.0) {
        throw std::invalid_argument(
            "training features must lie in [0,1]; scale the data first");
      }
    }
    if (row.label < 0) throw std::invalid_argument("negative class label");
    boxes.push_back(Hyperbox::from_sample(row.sample, row.label, static_cast<int>(i)));
    if (row.label != kUnlabeled) classes.insert(row.label);
  }
  TrainedModel model = agglo_merge_boxes(std::move(boxes), cfg, static_cast<int>(n));
  model.classes = std::move(classes);
  return model;
}

}  // namespace hyperbox
