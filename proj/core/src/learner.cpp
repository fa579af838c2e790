#include "hyperbox/learner.hpp"

namespace hyperbox {

OnlineFitConfig LearnerSpec::online_config() const {
  OnlineFitConfig cfg;
  cfg.params = params;
  cfg.params.membership = algorithm == Algorithm::Fmnn ||
                                  (!is_single_model(algorithm) &&
                                   base_algorithm == Algorithm::Fmnn)
                              ? MembershipKind::Fmnn
                              : MembershipKind::Gfmm;
  cfg.epochs = epochs;
  cfg.shuffle_seed = shuffle_seed;
  cfg.theta_min = theta_min;
  cfg.theta_decay = theta_decay;
  return cfg;
}

AggloConfig LearnerSpec::agglo_config() const {
  AggloConfig cfg;
  cfg.params = params;
  cfg.params.membership = MembershipKind::Gfmm;
  cfg.sigma_min = sigma_min;
  cfg.similarity = similarity;
  return cfg;
}

LearnerSpec LearnerSpec::base_spec() const {
  LearnerSpec base = *this;
  base.algorithm = base_algorithm;
  return base;
}

void LearnerSpec::validate() const {
  if (!is_single_model(algorithm)) {
    if (!is_single_model(base_algorithm)) {
      throw std::invalid_argument("ensemble base must be a single-model algorithm");
    }
    if (members < 1) throw std::invalid_argument("ensembles need at least one member");
    if (!(sample_rate > 0.0) || sample_rate > 1.0) {
      throw std::invalid_argument("sample_rate must lie in (0,1]");
    }
  }
  if (sigma_min < 0.0 || sigma_min > 1.0) {
    throw std::invalid_argument("sigma_min must lie in [0,1]");
  }
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
}

TrainedModel fit_single(const Dataset& data, const LearnerSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::OnlnGfmm:
      return fit_onln_gfmm(data, spec.online_config());
    case Algorithm::IolGfmm:
      return fit_iol_gfmm(data, spec.online_config());
    case Algorithm::Fmnn:
      return fit_fmnn(data, spec.online_config());
    case Algorithm::Agglo2:
      return fit_agglo2(data, spec.agglo_config());
    default:
      throw std::invalid_argument("fit_single is for single-model algorithms");
  }
}

}  // namespace hyperbox
