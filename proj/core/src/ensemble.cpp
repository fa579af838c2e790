#include "hyperbox/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hyperbox/parallel.hpp"
#include "hyperbox/rng.hpp"

namespace hyperbox {

namespace {

std::size_t bootstrap_size(std::size_t n, double rate) {
  const auto sized = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  return std::max<std::size_t>(1, sized);
}

Dataset bootstrap_resample(const Dataset& data, std::size_t size, Rng& rng) {
  Dataset out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(data[rng.next_below(data.size())]);
  }
  return out;
}

IntervalSample project_sample(const IntervalSample& x, const std::vector<int>& subset) {
  IntervalSample p;
  p.lower.reserve(subset.size());
  p.upper.reserve(subset.size());
  for (int j : subset) {
    p.lower.push_back(x.lower[static_cast<std::size_t>(j)]);
    p.upper.push_back(x.upper[static_cast<std::size_t>(j)]);
  }
  return p;
}

LearnerSpec project_spec(const LearnerSpec& base, const std::vector<int>& subset) {
  LearnerSpec spec = base;
  if (spec.params.gamma.size() > 1) {
    std::vector<double> g;
    g.reserve(subset.size());
    for (int j : subset) g.push_back(spec.params.gamma[static_cast<std::size_t>(j)]);
    spec.params.gamma = std::move(g);
  }
  return spec;
}

void check_ensemble_args(const LearnerSpec& base, int members, double sample_rate) {
  if (!is_single_model(base.algorithm)) {
    throw std::invalid_argument("ensemble base must be a single-model algorithm");
  }
  if (members < 1) throw std::invalid_argument("ensembles need at least one member");
  if (!(sample_rate > 0.0) || sample_rate > 1.0) {
    throw std::invalid_argument("sample_rate must lie in (0,1]");
  }
}

void finish_ensemble(EnsembleModel& e) {
  for (const auto& m : e.members) {
    e.classes.insert(m.classes.begin(), m.classes.end());
  }
}

}  // namespace

EnsembleModel fit_bagging(const Dataset& data, const LearnerSpec& base, int members,
                          double sample_rate, std::uint64_t seed) {
  check_ensemble_args(base, members, sample_rate);
  if (data.empty()) throw std::invalid_argument("cannot fit on empty data");
  const std::size_t n = data.front().sample.size();
  const std::size_t size = bootstrap_size(data.size(), sample_rate);

  EnsembleModel e;
  e.kind = Algorithm::Bagging;
  e.seed = seed;
  e.n_features = static_cast<int>(n);
  e.members.resize(static_cast<std::size_t>(members));
  e.feature_subsets.resize(static_cast<std::size_t>(members));
  std::vector<int> full(n);
  std::iota(full.begin(), full.end(), 0);
  parallel_for(static_cast<std::size_t>(members), [&](std::size_t i) {
    Rng rng(seed + i);
    const Dataset resample = bootstrap_resample(data, size, rng);
    e.members[i] = fit_single(resample, base);
    e.feature_subsets[i] = full;
  });
  finish_ensemble(e);
  return e;
}

EnsembleModel fit_random_hyperboxes(const Dataset& data, const LearnerSpec& base,
                                    int members, double sample_rate,
                                    std::uint64_t seed) {
  check_ensemble_args(base, members, sample_rate);
  if (data.empty()) throw std::invalid_argument("cannot fit on empty data");
  const std::size_t n = data.front().sample.size();
  if (n < 2) {
    throw std::invalid_argument("random hyperboxes needs at least two features");
  }
  const std::size_t size = bootstrap_size(data.size(), sample_rate);
  const std::uint64_t m_lo =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                     std::floor(std::sqrt(static_cast<double>(n)))));
  const std::uint64_t m_hi = n - 1;

  EnsembleModel e;
  e.kind = Algorithm::RandomHyperboxes;
  e.seed = seed;
  e.n_features = static_cast<int>(n);
  e.members.resize(static_cast<std::size_t>(members));
  e.feature_subsets.resize(static_cast<std::size_t>(members));
  parallel_for(static_cast<std::size_t>(members), [&](std::size_t i) {
    Rng rng(seed + i);
    const std::uint64_t m = m_lo + rng.next_below(m_hi - m_lo + 1);
    // Partial Fisher-Yates: the first m entries form the subset.
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::uint64_t j = 0; j < m; ++j) {
      const std::uint64_t pick = j + rng.next_below(n - j);
      std::swap(pool[j], pool[pick]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(subset.begin(), subset.end());

    Dataset projected;
    projected.reserve(size);
    for (std::size_t s = 0; s < size; ++s) {
      const LabeledSample& row = data[rng.next_below(data.size())];
      projected.push_back({project_sample(row.sample, subset), row.label});
    }
    e.members[i] = fit_single(projected, project_spec(base, subset));
    e.feature_subsets[i] = std::move(subset);
  });
  finish_ensemble(e);
  return e;
}

EnsemblePrediction predict_ensemble(const EnsembleModel& e, const IntervalSample& x) {
  if (e.members.empty()) throw std::invalid_argument("empty ensemble");
  if (x.size() != static_cast<std::size_t>(e.n_features)) {
    throw std::invalid_argument("predict_ensemble: dimensionality mismatch");
  }
  struct Tally {
    int votes = 0;
    double membership = 0.0;
  };
  std::map<ClassLabel, Tally> tallies;
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const Prediction p = predict(e.members[i], project_sample(x, e.feature_subsets[i]));
    Tally& t = tallies[p.label];
    t.votes += 1;
    t.membership += p.membership;
  }
  EnsemblePrediction best;
  bool first = true;
  for (const auto& [label, t] : tallies) {  // ascending label order
    const bool wins =
        first || t.votes > best.votes ||
        (t.votes == best.votes && t.membership > best.summed_membership);
    if (wins) {
      best = {label, t.votes, t.membership};
      first = false;
    }
  }
  return best;
}

TrainedModel merge_models(const std::vector<TrainedModel>& members,
                          const AggloConfig& cfg) {
  if (members.empty()) throw std::invalid_argument("cannot merge zero models");
  const int n = members.front().n_features;
  std::vector<Hyperbox> pooled;
  std::set<ClassLabel> classes;
  int next_id = 0;
  for (const auto& m : members) {
    if (m.n_features != n) {
      throw std::invalid_argument("merge_models: members differ in dimensionality");
    }
    if (m.params.membership != MembershipKind::Gfmm) {
      throw std::invalid_argument("merge_models supports gfmm-membership models only");
    }
    classes.insert(m.classes.begin(), m.classes.end());
    for (Hyperbox box : m.boxes) {
      box.id = next_id++;
      pooled.push_back(std::move(box));
    }
  }
  TrainedModel merged = agglo_merge_boxes(std::move(pooled), cfg, n);
  merged.classes.insert(classes.begin(), classes.end());
  return merged;
}

void validate_ensemble(const EnsembleModel& e) {
  if (e.members.empty()) throw std::invalid_argument("ensemble has no members");
  if (e.kind != Algorithm::Bagging && e.kind != Algorithm::RandomHyperboxes) {
    throw std::invalid_argument("unexpected ensemble kind");
  }
  if (e.members.size() != e.feature_subsets.size()) {
    throw std::invalid_argument("one feature subset per member required");
  }
  if (e.n_features <= 0) throw std::invalid_argument("ensemble feature count must be positive");
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const auto& subset = e.feature_subsets[i];
    if (subset.empty()) throw std::invalid_argument("empty feature subset");
    int prev = -1;
    for (int j : subset) {
      if (j <= prev || j >= e.n_features) {
        throw std::invalid_argument("feature subsets must be sorted and within range");
      }
      prev = j;
    }
    if (e.members[i].n_features != static_cast<int>(subset.size())) {
      throw std::invalid_argument("member dimensionality differs from its subset");
    }
    validate_model(e.members[i]);
  }
  if (e.scaler) {
    e.scaler->validate();
    if (e.scaler->size() != static_cast<std::size_t>(e.n_features)) {
      throw std::invalid_argument("scaler state dimensionality differs from the ensemble");
    }
  }
  if (e.schema) e.schema->validate();
}

FittedModel fit_any(const Dataset& data, const LearnerSpec& spec) {
  spec.validate();
  switch (spec.algorithm) {
    case Algorithm::Bagging:
      return fit_bagging(data, spec.base_spec(), spec.members, spec.sample_rate,
                         spec.seed);
    case Algorithm::RandomHyperboxes:
      return fit_random_hyperboxes(data, spec.base_spec(), spec.members,
                                   spec.sample_rate, spec.seed);
    case Algorithm::BaggingModelLevel: {
      LearnerSpec base = spec.base_spec();
      if (base.algorithm == Algorithm::Fmnn) {
        throw std::invalid_argument(
            "model-level bagging requires a gfmm-membership base learner");
      }
      const EnsembleModel bagged =
          fit_bagging(data, base, spec.members, spec.sample_rate, spec.seed);
      return merge_models(bagged.members, spec.agglo_config());
    }
    default:
      return fit_single(data, spec);
  }
}

AnyPrediction predict_any(const FittedModel& model, const IntervalSample& x) {
  if (const auto* single = std::get_if<TrainedModel>(&model)) {
    const Prediction p = predict(*single, x);
    return {p.label, p.membership};
  }
  const auto& e = std::get<EnsembleModel>(model);
  const EnsemblePrediction p = predict_ensemble(e, x);
  return {p.label, static_cast<double>(p.votes) / static_cast<double>(e.members.size())};
}

int fitted_n_features(const FittedModel& model) {
  if (const auto* single = std::get_if<TrainedModel>(&model)) return single->n_features;
  return std::get<EnsembleModel>(model).n_features;
}

std::size_t fitted_box_count(const FittedModel& model) {
  if (const auto* single = std::get_if<TrainedModel>(&model)) {
    return single->boxes.size();
  }
  std::size_t total = 0;
  for (const auto& m : std::get<EnsembleModel>(model).members) total += m.boxes.size();
  return total;
}

}  // namespace hyperbox
