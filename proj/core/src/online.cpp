#include "hyperbox/online.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperbox/rng.hpp"

namespace hyperbox {

namespace {

void require_unit_range(const Dataset& data) {
  for (const auto& row : data) {
    row.sample.validate();
    for (std::size_t j = 0; j < row.sample.size(); ++j) {
      if (row.sample.missing(j)) continue;
      if (row.sample.lower[j] < 0.0 || row.sample.upper[j] > 1.0) {
        throw std::invalid_argument(
            "training features must lie in [0,1]; scale the data first");
      }
    }
    if (row.label < 0) throw std::invalid_argument("negative class label");
  }
}

void require_consistent_dims(const Dataset& data) {
  const std::size_t n = data.front().sample.size();
  for (const auto& row : data) {
    if (row.sample.size() != n) {
      throw std::invalid_argument("training samples differ in dimensionality");
    }
  }
  if (n == 0) throw std::invalid_argument("samples must have at least one feature");
}

double membership_of(const TrainedModel& m, const Hyperbox& box, const IntervalSample& x) {
  return m.params.membership == MembershipKind::Fmnn
             ? fmnn_membership(box, x, m.params.gamma_at(0))
             : gfmm_membership(box, x, m.params.gamma);
}

bool label_compatible(ClassLabel box_label, ClassLabel sample_label) {
  return box_label == sample_label || box_label == kUnlabeled ||
         sample_label == kUnlabeled;
}

struct RankedBox {
  std::size_t index;
  double membership;
};

// Compatible boxes by membership descending, box id ascending on ties.
std::vector<RankedBox> rank_candidates(const TrainedModel& m, const IntervalSample& x,
                                       ClassLabel label, bool same_label_only) {
  std::vector<RankedBox> ranked;
  for (std::size_t i = 0; i < m.boxes.size(); ++i) {
    const Hyperbox& box = m.boxes[i];
    const bool ok = same_label_only ? box.label == label
                                    : label_compatible(box.label, label);
    if (!ok) continue;
    ranked.push_back({i, membership_of(m, box, x)});
  }
  std::sort(ranked.begin(), ranked.end(), [&](const RankedBox& a, const RankedBox& b) {
    if (a.membership != b.membership) return a.membership > b.membership;
    return m.boxes[a.index].id < m.boxes[b.index].id;
  });
  return ranked;
}

bool conflicting_pair(const Hyperbox& a, const Hyperbox& b) {
  if (a.label == kUnlabeled || b.label == kUnlabeled || a.label == b.label) {
    return false;
  }
  return overlap_test(a, b).has_value();
}

// Would `candidate` (the prospective state of box `self`) overlap any box of
// another class?
bool creates_conflict(const TrainedModel& m, const Hyperbox& candidate, std::size_t self) {
  for (std::size_t k = 0; k < m.boxes.size(); ++k) {
    if (k == self) continue;
    if (conflicting_pair(candidate, m.boxes[k])) return true;
  }
  return false;
}

// Contracts box `idx` against every conflicting box until no overlap remains.
// Contraction only shrinks boxes, so one sweep suffices; the outer loop is a
// guard against a sweep that made no progress.
void resolve_overlaps(TrainedModel& m, std::size_t idx) {
  for (int round = 0; round < 64; ++round) {
    bool any = false;
    for (std::size_t k = 0; k < m.boxes.size(); ++k) {
      if (k == idx) continue;
      Hyperbox& a = m.boxes[idx];
      Hyperbox& b = m.boxes[k];
      if (a.label == kUnlabeled || b.label == kUnlabeled || a.label == b.label) {
        continue;
      }
      if (const auto ov = overlap_test(a, b)) {
        contract(a, b, ov->dim, ov->kase);
        any = true;
      }
    }
    if (!any) return;
  }
  throw std::logic_error("overlap resolution did not converge");
}

void note_class(TrainedModel& m, ClassLabel label) {
  if (label != kUnlabeled) m.classes.insert(label);
}

void create_box(TrainedModel& m, const IntervalSample& x, ClassLabel label) {
  m.boxes.push_back(Hyperbox::from_sample(x, label, m.fresh_box_id()));
  note_class(m, label);
}

enum class Rule { Onln, Iol, Fmnn };

// One presentation of (x, label). The ranked candidate walk: a candidate
// containing the sample absorbs it (count only, plus label adoption for an
// unlabeled box); otherwise the first candidate passing the expansion
// criterion grows. Onln/Fmnn contract conflicts away after committing; Iol
// instead rejects any candidate whose committed state would conflict. When
// no candidate works the sample seeds a new box.
void train_step(TrainedModel& m, const IntervalSample& x, ClassLabel label,
                double theta, Rule rule) {
  const auto ranked = rank_candidates(m, x, label, rule == Rule::Fmnn);
  const std::size_t n = x.size();
  for (const RankedBox& cand : ranked) {
    Hyperbox& box = m.boxes[cand.index];
    if (rule != Rule::Fmnn && cand.membership == 1.0) {
      const bool adopts = box.label == kUnlabeled && label != kUnlabeled;
      if (adopts && rule == Rule::Iol) {
        Hyperbox trial = box;
        trial.label = label;
        if (creates_conflict(m, trial, cand.index)) continue;
      }
      box.sample_count += 1;
      if (adopts) {
        box.label = label;
        note_class(m, label);
        if (rule != Rule::Iol) resolve_overlaps(m, cand.index);
      }
      return;
    }
    bool can_grow;
    if (rule == Rule::Fmnn) {
      double hull_sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        hull_sum += std::max(box.max_vertex[j], x.upper[j]) -
                    std::min(box.min_vertex[j], x.lower[j]);
      }
      can_grow = hull_sum <= static_cast<double>(n) * theta;
    } else {
      can_grow = is_expandable(box, x, theta);
    }
    if (!can_grow) continue;
    Hyperbox grown = expand(box, x, label);
    if (rule == Rule::Iol) {
      if (creates_conflict(m, grown, cand.index)) continue;
      box = std::move(grown);
      note_class(m, label);
    } else {
      box = std::move(grown);
      note_class(m, label);
      resolve_overlaps(m, cand.index);
    }
    return;
  }
  create_box(m, x, label);
}

TrainedModel fit_rule(const Dataset& data, const OnlineFitConfig& cfg, Rule rule,
                      Algorithm algorithm) {
  if (data.empty()) throw std::invalid_argument("cannot fit on empty data");
  require_consistent_dims(data);
  require_unit_range(data);
  const std::size_t n = data.front().sample.size();
  cfg.validate(n);
  if (rule == Rule::Fmnn) {
    if (cfg.params.gamma.size() != 1) {
      throw std::invalid_argument("fmnn uses a scalar gamma");
    }
    for (const auto& row : data) {
      if (!row.sample.fully_observed() || !row.sample.is_point()) {
        throw std::invalid_argument("fmnn requires fully observed point samples");
      }
      if (row.label == kUnlabeled) {
        throw std::invalid_argument("fmnn requires labeled samples");
      }
    }
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::optional<Rng> rng;
  if (cfg.shuffle_seed) rng.emplace(*cfg.shuffle_seed);

  TrainedModel model;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double theta = cfg.theta_for_epoch(epoch);
    if (rng) rng->shuffle(order);
    model = TrainedModel{};
    model.algorithm = algorithm;
    model.params = cfg.params;
    model.params.theta = theta;
    model.n_features = static_cast<int>(n);
    for (std::size_t i : order) {
      train_step(model, data[i].sample, data[i].label, theta, rule);
    }
  }
  return model;
}

}  // namespace

void OnlineFitConfig::validate(std::size_t n_features) const {
  params.validate(n_features);
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (theta_decay && (!(*theta_decay > 0.0) || *theta_decay > 1.0)) {
    throw std::invalid_argument("theta_decay must lie in (0,1]");
  }
  if (theta_min && (*theta_min > params.theta || !(*theta_min > 0.0))) {
    throw std::invalid_argument("theta_min must lie in (0, theta]");
  }
}

double OnlineFitConfig::theta_for_epoch(int epoch) const {
  double theta = params.theta;
  const double decay = theta_decay.value_or(1.0);
  for (int e = 0; e < epoch; ++e) theta *= decay;
  if (theta_min) theta = std::max(theta, *theta_min);
  return theta;
}

TrainedModel fit_onln_gfmm(const Dataset& data, const OnlineFitConfig& cfg) {
  if (cfg.params.membership != MembershipKind::Gfmm) {
    throw std::invalid_argument("fit_onln_gfmm requires the gfmm membership kind");
  }
  return fit_rule(data, cfg, Rule::Onln, Algorithm::OnlnGfmm);
}

TrainedModel fit_iol_gfmm(const Dataset& data, const OnlineFitConfig& cfg) {
  if (cfg.params.membership != MembershipKind::Gfmm) {
    throw std::invalid_argument("fit_iol_gfmm requires the gfmm membership kind");
  }
  return fit_rule(data, cfg, Rule::Iol, Algorithm::IolGfmm);
}

TrainedModel fit_fmnn(const Dataset& data, const OnlineFitConfig& cfg) {
  if (cfg.params.membership != MembershipKind::Fmnn) {
    throw std::invalid_argument("fit_fmnn requires the fmnn membership kind");
  }
  return fit_rule(data, cfg, Rule::Fmnn, Algorithm::Fmnn);
}

TrainedModel partial_fit(TrainedModel model, const IntervalSample& x, ClassLabel label) {
  x.validate();
  if (x.size() != static_cast<std::size_t>(model.n_features)) {
    throw std::invalid_argument("partial_fit: dimensionality mismatch");
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x.missing(j)) continue;
    if (x.lower[j] < 0.0 || x.upper[j] > 1.0) {
      throw std::invalid_argument("partial_fit: features must lie in [0,1]");
    }
  }
  if (label < 0) throw std::invalid_argument("negative class label");
  Rule rule = Rule::Onln;
  if (model.algorithm == Algorithm::IolGfmm) rule = Rule::Iol;
  if (model.algorithm == Algorithm::Fmnn) {
    rule = Rule::Fmnn;
    if (!x.fully_observed() || !x.is_point() || label == kUnlabeled) {
      throw std::invalid_argument("fmnn requires a labeled, fully observed point sample");
    }
  }
  train_step(model, x, label, model.params.theta, rule);
  return model;
}

}  // namespace hyperbox
