#include "hyperbox/types.hpp"

#include <algorithm>

namespace hyperbox {

IntervalSample::IntervalSample(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  validate();
}

IntervalSample IntervalSample::point(std::vector<double> values) {
  IntervalSample s;
  s.lower = values;
  s.upper = std::move(values);
  return s;
}

bool IntervalSample::is_point() const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (missing(j)) continue;
    if (lower[j] != upper[j]) return false;
  }
  return true;
}

bool IntervalSample::fully_observed() const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (missing(j)) return false;
  }
  return true;
}

void IntervalSample::validate() const {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("sample bound vectors differ in length");
  }
  for (std::size_t j = 0; j < size(); ++j) {
    const bool lo_missing = is_missing(lower[j]);
    const bool hi_missing = is_missing(upper[j]);
    if (lo_missing != hi_missing) {
      throw std::invalid_argument("a feature must be wholly missing or wholly present");
    }
    if (lo_missing) continue;
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j])) {
      throw std::invalid_argument("sample bounds must be finite");
    }
    if (lower[j] > upper[j]) {
      throw std::invalid_argument("sample lower bound exceeds upper bound");
    }
  }
}

double Hyperbox::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < dims(); ++j) {
    if (!dim_set(j)) continue;
    const double w = width(j);
    v *= (w == 0.0) ? kDegenerateWidth : w;
  }
  return v;
}

Hyperbox Hyperbox::from_sample(const IntervalSample& x, ClassLabel label, int id) {
  Hyperbox b;
  b.min_vertex.resize(x.size());
  b.max_vertex.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.missing(j)) {
      b.min_vertex[j] = 1.0;  // unset-dimension sentinel
      b.max_vertex[j] = 0.0;
    } else {
      b.min_vertex[j] = x.lower[j];
      b.max_vertex[j] = x.upper[j];
    }
  }
  b.label = label;
  b.sample_count = 1;
  b.id = id;
  return b;
}

void Hyperbox::validate() const {
  if (min_vertex.size() != max_vertex.size()) {
    throw std::invalid_argument("hyperbox vertex vectors differ in length");
  }
  for (std::size_t j = 0; j < dims(); ++j) {
    const double lo = min_vertex[j];
    const double hi = max_vertex[j];
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("hyperbox vertices must be finite");
    }
    if (lo > hi) {
      if (lo != 1.0 || hi != 0.0) {
        throw std::invalid_argument(
            "inverted hyperbox dimension other than the (1,0) unset sentinel");
      }
      continue;
    }
    if (lo < 0.0 || hi > 1.0) {
      throw std::invalid_argument("hyperbox vertices must lie in [0,1]");
    }
  }
  if (sample_count < 0) {
    throw std::invalid_argument("negative hyperbox sample count");
  }
  if (label < 0) {
    throw std::invalid_argument("negative class label");
  }
}

bool is_single_model(Algorithm a) {
  switch (a) {
    case Algorithm::OnlnGfmm:
    case Algorithm::IolGfmm:
    case Algorithm::Fmnn:
    case Algorithm::Agglo2:
      return true;
    default:
      return false;
  }
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::OnlnGfmm: return "onln-gfmm";
    case Algorithm::IolGfmm: return "iol-gfmm";
    case Algorithm::Fmnn: return "fmnn";
    case Algorithm::Agglo2: return "agglo2";
    case Algorithm::Bagging: return "bagging";
    case Algorithm::BaggingModelLevel: return "bagging-model-level";
    case Algorithm::RandomHyperboxes: return "random-hyperboxes";
  }
  throw std::logic_error("unknown algorithm enumerator");
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "onln-gfmm") return Algorithm::OnlnGfmm;
  if (s == "iol-gfmm") return Algorithm::IolGfmm;
  if (s == "fmnn") return Algorithm::Fmnn;
  if (s == "agglo2") return Algorithm::Agglo2;
  if (s == "bagging") return Algorithm::Bagging;
  if (s == "bagging-model-level") return Algorithm::BaggingModelLevel;
  if (s == "random-hyperboxes") return Algorithm::RandomHyperboxes;
  throw std::invalid_argument("unknown algorithm: " + s);
}

void ModelParams::validate(std::size_t n_features) const {
  if (!(theta > 0.0) || theta > 1.0) {
    throw std::invalid_argument("theta must lie in (0,1]");
  }
  if (gamma.empty()) {
    throw std::invalid_argument("gamma must not be empty");
  }
  if (gamma.size() != 1 && gamma.size() != n_features) {
    throw std::invalid_argument("gamma must be a scalar or one value per feature");
  }
  for (double g : gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("gamma values must be positive and finite");
    }
  }
}

void ScalerState::validate() const {
  if (feature_min.size() != feature_range.size()) {
    throw std::invalid_argument("scaler state vectors differ in length");
  }
  for (std::size_t j = 0; j < size(); ++j) {
    if (!std::isfinite(feature_min[j]) || !std::isfinite(feature_range[j]) ||
        feature_range[j] < 0.0) {
      throw std::invalid_argument("scaler state must hold finite mins and nonnegative ranges");
    }
  }
}

const std::string* DatasetSchema::class_name(ClassLabel id) const {
  for (const auto& [name, cid] : class_ids) {
    if (cid == id) return &name;
  }
  return nullptr;
}

std::string DatasetSchema::display_label(ClassLabel id) const {
  if (id == kUnlabeled) return "";
  if (const std::string* name = class_name(id)) return *name;
  return std::to_string(id);
}

void DatasetSchema::validate() const {
  std::set<std::string> seen;
  for (const auto& name : feature_names) {
    if (name == label_column) {
      throw std::invalid_argument("label column listed among features");
    }
    if (!seen.insert(name).second) {
      throw std::invalid_argument("duplicate feature name: " + name);
    }
  }
  std::set<ClassLabel> ids;
  for (const auto& [name, id] : class_ids) {
    if (id <= 0) {
      throw std::invalid_argument("class ids must be positive");
    }
    if (!ids.insert(id).second) {
      throw std::invalid_argument("duplicate class id in schema");
    }
  }
}

}  // namespace hyperbox
