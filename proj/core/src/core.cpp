#include "hyperbox/core.hpp"

#include <algorithm>
#include <string>

namespace hyperbox {

namespace {

// f(r, g): 0 below the box face, linear ramp r*g, saturating at 1.
double ramp(double r, double g) {
  const double rg = r * g;
  if (rg > 1.0) return 1.0;
  if (rg < 0.0) return 0.0;
  return rg;
}

void require_same_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimensionality mismatch");
  }
}

void require_gamma(const std::vector<double>& gamma, std::size_t n) {
  if (gamma.empty() || (gamma.size() != 1 && gamma.size() != n)) {
    throw std::invalid_argument("gamma must be a scalar or one value per feature");
  }
  for (double g : gamma) {
    if (!(g > 0.0)) throw std::invalid_argument("gamma values must be positive");
  }
}

double gamma_at(const std::vector<double>& gamma, std::size_t j) {
  return gamma.size() == 1 ? gamma[0] : gamma[j];
}

// Classifies the overlap of a and b along dimension j, or nullopt when the
// intervals are separated, merely touch, or are both degenerate.
std::optional<OverlapInfo> classify_dim(const Hyperbox& a, const Hyperbox& b,
                                        std::size_t j) {
  if (!a.dim_set(j) || !b.dim_set(j)) return std::nullopt;
  const double alo = a.min_vertex[j], ahi = a.max_vertex[j];
  const double blo = b.min_vertex[j], bhi = b.max_vertex[j];
  const double lo = std::max(alo, blo);
  const double hi = std::min(ahi, bhi);
  if (lo > hi) return std::nullopt;
  if (lo == hi) {
    // Degenerate meeting point: only a zero-width interval strictly inside
    // the other interval counts; boundary touches and coincident points do not.
    const bool b_point_inside = (blo == bhi && alo < blo && bhi < ahi);
    const bool a_point_inside = (alo == ahi && blo < alo && ahi < bhi);
    if (!b_point_inside && !a_point_inside) return std::nullopt;
  }
  OverlapInfo info;
  info.dim = j;
  if (alo < blo && ahi < bhi) {
    info.kase = 1;
    info.delta = ahi - blo;
  } else if (blo < alo && bhi < ahi) {
    info.kase = 2;
    info.delta = bhi - alo;
  } else if (alo <= blo && bhi <= ahi) {
    info.kase = 3;
    info.delta = std::min(bhi - alo, ahi - blo);
  } else {
    info.kase = 4;
    info.delta = std::min(bhi - alo, ahi - blo);
  }
  return info;
}

}  // namespace

double gfmm_membership(const Hyperbox& box, const IntervalSample& x,
                       const std::vector<double>& gamma) {
  require_same_dims(box.dims(), x.size(), "gfmm_membership");
  require_gamma(gamma, box.dims());
  double m = 1.0;
  for (std::size_t j = 0; j < box.dims(); ++j) {
    if (!box.dim_set(j) || x.missing(j)) continue;  // neutral dimension
    const double g = gamma_at(gamma, j);
    const double fit_above = 1.0 - ramp(x.upper[j] - box.max_vertex[j], g);
    const double fit_below = 1.0 - ramp(box.min_vertex[j] - x.lower[j], g);
    m = std::min(m, std::min(fit_above, fit_below));
  }
  return m;
}

double fmnn_membership(const Hyperbox& box, const IntervalSample& x, double gamma) {
  require_same_dims(box.dims(), x.size(), "fmnn_membership");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!x.fully_observed() || !x.is_point()) {
    throw std::invalid_argument("fmnn_membership requires a fully observed point sample");
  }
  const std::size_t n = box.dims();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!box.dim_set(j)) {
      throw std::invalid_argument("fmnn_membership requires a box with all dimensions set");
    }
    const double v = x.lower[j];
    const double above =
        std::max(0.0, 1.0 - std::max(0.0, gamma * std::min(1.0, v - box.max_vertex[j])));
    const double below =
        std::max(0.0, 1.0 - std::max(0.0, gamma * std::min(1.0, box.min_vertex[j] - v)));
    sum += above + below;
  }
  return sum / (2.0 * static_cast<double>(n));
}

bool is_expandable(const Hyperbox& box, const IntervalSample& x, double theta) {
  require_same_dims(box.dims(), x.size(), "is_expandable");
  for (std::size_t j = 0; j < box.dims(); ++j) {
    if (!box.dim_set(j) || x.missing(j)) continue;
    const double span = std::max(box.max_vertex[j], x.upper[j]) -
                        std::min(box.min_vertex[j], x.lower[j]);
    if (span > theta) return false;
  }
  return true;
}

Hyperbox expand(Hyperbox box, const IntervalSample& x, ClassLabel sample_label) {
  require_same_dims(box.dims(), x.size(), "expand");
  for (std::size_t j = 0; j < box.dims(); ++j) {
    if (x.missing(j)) continue;
    if (!box.dim_set(j)) {
      box.min_vertex[j] = x.lower[j];
      box.max_vertex[j] = x.upper[j];
    } else {
      box.min_vertex[j] = std::min(box.min_vertex[j], x.lower[j]);
      box.max_vertex[j] = std::max(box.max_vertex[j], x.upper[j]);
    }
  }
  box.sample_count += 1;
  if (box.label == kUnlabeled) box.label = sample_label;
  return box;
}

std::optional<OverlapInfo> overlap_test(const Hyperbox& a, const Hyperbox& b) {
  require_same_dims(a.dims(), b.dims(), "overlap_test");
  std::optional<OverlapInfo> best;
  for (std::size_t j = 0; j < a.dims(); ++j) {
    const auto info = classify_dim(a, b, j);
    if (!info) return std::nullopt;  // this dimension separates the boxes
    if (!best || info->delta < best->delta) best = info;
  }
  return best;
}

void contract(Hyperbox& a, Hyperbox& b, std::size_t dim, int kase) {
  require_same_dims(a.dims(), b.dims(), "contract");
  if (dim >= a.dims()) throw std::invalid_argument("contract: dimension out of range");
  const auto info = classify_dim(a, b, dim);
  if (!info || info->kase != kase) {
    throw std::invalid_argument("contract: case does not match the geometry");
  }
  switch (kase) {
    case 1: {
      const double mid = 0.5 * (a.max_vertex[dim] + b.min_vertex[dim]);
      a.max_vertex[dim] = mid;
      b.min_vertex[dim] = mid;
      break;
    }
    case 2: {
      const double mid = 0.5 * (b.max_vertex[dim] + a.min_vertex[dim]);
      b.max_vertex[dim] = mid;
      a.min_vertex[dim] = mid;
      break;
    }
    case 3: {
      if (b.max_vertex[dim] - a.min_vertex[dim] < a.max_vertex[dim] - b.min_vertex[dim]) {
        a.min_vertex[dim] = b.max_vertex[dim];
      } else {
        a.max_vertex[dim] = b.min_vertex[dim];
      }
      break;
    }
    case 4: {
      if (b.max_vertex[dim] - a.min_vertex[dim] < a.max_vertex[dim] - b.min_vertex[dim]) {
        b.max_vertex[dim] = a.min_vertex[dim];
      } else {
        b.min_vertex[dim] = a.max_vertex[dim];
      }
      break;
    }
    default:
      throw std::invalid_argument("contract: case must be 1..4");
  }
  if (classify_dim(a, b, dim)) {
    throw std::logic_error("contract did not resolve the overlap");
  }
}

bool wins_tie(const Hyperbox& candidate, const Hyperbox& incumbent) {
  if (candidate.sample_count != incumbent.sample_count) {
    return candidate.sample_count > incumbent.sample_count;
  }
  const double vc = candidate.volume();
  const double vi = incumbent.volume();
  if (vc != vi) return vc < vi;
  return candidate.id < incumbent.id;
}

Prediction predict(const TrainedModel& model, const IntervalSample& x) {
  if (model.boxes.empty()) {
    throw std::invalid_argument("predict: model has no hyperboxes");
  }
  require_same_dims(static_cast<std::size_t>(model.n_features), x.size(), "predict");
  bool any_labeled = false;
  for (const auto& b : model.boxes) {
    if (b.label != kUnlabeled) {
      any_labeled = true;
      break;
    }
  }
  const Hyperbox* best = nullptr;
  std::size_t best_index = 0;
  double best_m = -1.0;
  for (std::size_t i = 0; i < model.boxes.size(); ++i) {
    const Hyperbox& box = model.boxes[i];
    if (any_labeled && box.label == kUnlabeled) continue;
    const double m = model.params.membership == MembershipKind::Fmnn
                         ? fmnn_membership(box, x, model.params.gamma_at(0))
                         : gfmm_membership(box, x, model.params.gamma);
    if (!best || m > best_m || (m == best_m && wins_tie(box, *best))) {
      best = &box;
      best_index = i;
      best_m = m;
    }
  }
  return Prediction{best->label, best_m, best->id, best_index};
}

bool interclass_interior_overlap(const Hyperbox& a, const Hyperbox& b) {
  if (a.label == kUnlabeled || b.label == kUnlabeled || a.label == b.label) {
    return false;
  }
  for (std::size_t j = 0; j < a.dims(); ++j) {
    if (!a.dim_set(j) || !b.dim_set(j)) return false;
    const double lo = std::max(a.min_vertex[j], b.min_vertex[j]);
    const double hi = std::min(a.max_vertex[j], b.max_vertex[j]);
    if (!(lo < hi)) return false;
  }
  return true;
}

void validate_model(const TrainedModel& m) {
  if (!is_single_model(m.algorithm)) {
    throw std::invalid_argument("trained model carries an ensemble algorithm tag");
  }
  if (m.n_features <= 0) {
    throw std::invalid_argument("model must have a positive feature count");
  }
  m.params.validate(static_cast<std::size_t>(m.n_features));
  std::set<int> ids;
  for (const auto& box : m.boxes) {
    box.validate();
    if (box.dims() != static_cast<std::size_t>(m.n_features)) {
      throw std::invalid_argument("hyperbox dimensionality differs from the model");
    }
    if (box.sample_count < 1) {
      throw std::invalid_argument("trained hyperbox with sample count below 1");
    }
    if (!ids.insert(box.id).second) {
      throw std::invalid_argument("duplicate hyperbox id");
    }
    if (box.label != kUnlabeled && !m.classes.count(box.label)) {
      throw std::invalid_argument("hyperbox label missing from the model class set");
    }
  }
  for (ClassLabel c : m.classes) {
    if (c <= 0) throw std::invalid_argument("model class ids must be positive");
  }
  if (m.scaler) {
    m.scaler->validate();
    if (m.scaler->size() != static_cast<std::size_t>(m.n_features)) {
      throw std::invalid_argument("scaler state dimensionality differs from the model");
    }
  }
  if (m.schema) {
    m.schema->validate();
    if (m.schema->n_features() != static_cast<std::size_t>(m.n_features)) {
      throw std::invalid_argument("schema feature count differs from the model");
    }
  }
  for (std::size_t i = 0; i < m.boxes.size(); ++i) {
    for (std::size_t k = i + 1; k < m.boxes.size(); ++k) {
      if (interclass_interior_overlap(m.boxes[i], m.boxes[k])) {
        throw std::invalid_argument("inter-class hyperbox overlap between boxes " +
                                    std::to_string(m.boxes[i].id) + " and " +
                                    std::to_string(m.boxes[k].id));
      }
    }
  }
}

}  // namespace hyperbox
