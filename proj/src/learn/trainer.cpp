#include "csaot/learn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "csaot/errors.hpp"
#include "csaot/learn/advantage.hpp"
#include "csaot/nn/gaussian.hpp"
#include "csaot/nn/ops.hpp"

namespace csaot::learn {

void TrainConfig::validate() const {
  if (gamma != 1.0) throw InputError("gamma is fixed at 1");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw InputError("gae_lambda must lie in [0, 1]");
  if (!(clip > 0.0 && clip < 1.0)) throw InputError("clip must lie in (0, 1)");
  if (epochs < 1) throw InputError("epochs must be at least 1");
  if (!(lr > 0.0)) throw InputError("lr must be positive");
  if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0)) throw InputError("epsilon0 must lie in [0, 1]");
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) throw InputError("epsilon_decay must lie in (0, 1]");
  if (!(epsilon_floor >= 0.0 && epsilon_floor <= 1.0)) throw InputError("epsilon_floor must lie in [0, 1]");
  if (episodes < 0) throw InputError("episodes must be non-negative");
  if (!(value_coef >= 0.0) || !(entropy_coef >= 0.0)) throw InputError("loss coefficients must be non-negative");
  if (!(grad_clip > 0.0)) throw InputError("grad_clip must be positive");
}

double epsilon_schedule(int episode, double epsilon0, double decay, double floor) {
  if (episode < 0) throw InputError("epsilon_schedule: negative episode index");
  return std::max(floor, epsilon0 * std::pow(decay, episode));
}

AgentUpdate update_agent(agents::AgentCore& agent, const AgentTrajectory& trajectory, const TrainConfig& config,
                         double balance_coef) {
  AgentUpdate out;
  const std::size_t n = trajectory.size();
  if (n == 0) return out;
  const Advantages adv = compute_advantages(trajectory.rewards, trajectory.values, config.gae_lambda, config.gamma);
  const agents::AgentCore snapshot = agent;
  agent.optimizer.set_lr(config.lr);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::vector<nn::ParamTensor*> params = agent.parameters();
    try {
      nn::Tape tape;
      nn::LstmVars state = agent.zero_state(tape);
      std::vector<nn::Var> lps, vals, ents, probs;
      for (std::size_t t = 0; t < n; ++t) {
        agents::AgentPass pass = agent.forward(tape.constant(trajectory.observations[t]), state);
        state = pass.state;
        lps.push_back(nn::gaussian_log_prob(pass.policy.head, trajectory.raw_actions[t]));
        vals.push_back(pass.value);
        ents.push_back(nn::gaussian_entropy(pass.policy.head.log_std));
        probs.push_back(pass.policy.probs);
      }
      PpoTerms terms = ppo_loss(nn::concat(lps), nn::concat(vals), nn::concat(ents), trajectory.log_probs,
                                adv.normalized, adv.returns, trajectory.exploratory, config.ppo());
      nn::Var loss = terms.loss;
      if (balance_coef > 0.0) loss = nn::add(loss, nn::scale(mop::balance_loss(probs), balance_coef));
      nn::zero_grads(params);
      tape.backward(loss);
      nn::clip_grad_norm(params, config.grad_clip);
      agent.optimizer.step(params);
      out.losses.push_back(loss.scalar());
      ++out.optimizer_steps;
    } catch (const NumericalError& e) {
      agent = snapshot;
      out.aborted = true;
      out.incident = agent.name() + ": update aborted: " + e.what();
      std::cerr << out.incident << "\n";
      return out;
    }
  }
  return out;
}

std::vector<AgentUpdate> update_agents(agents::AgentSystem& system, const RolloutBatch& batch,
                                       const TrainConfig& config) {
  if (batch.agents.size() != system.agents().size()) throw InputError("update_agents: batch does not match system");
  std::vector<AgentUpdate> out;
  for (std::size_t i = 0; i < batch.agents.size(); ++i)
    out.push_back(update_agent(system.agents()[i], batch.agents[i], config, system.config().mop.balance_coef));
  return out;
}

Trainer::Trainer(agents::AgentSystem& system, sim::World world, TrainConfig config, rewards::RewardWeights weights,
                 std::uint64_t seed)
    : system_(system), world_(std::move(world)), config_(config), weights_(weights), seed_(seed) {
  config_.validate();
  weights_.validate();
}

double Trainer::epsilon() const {
  return epsilon_schedule(episode_, config_.epsilon0, config_.epsilon_decay, config_.epsilon_floor);
}

EpisodeLog Trainer::run_episode() {
  EpisodeOptions opts;
  opts.epsilon = epsilon();
  opts.weights = weights_;
  EpisodeResult r = learn::run_episode(system_, world_, mix_seed(seed_, static_cast<std::uint64_t>(episode_)), opts);
  EpisodeLog log;
  log.episode = episode_;
  log.epsilon = opts.epsilon;
  log.el = r.record.el;
  log.cr = r.record.cr;
  log.cr_raw = r.record.cr_raw;
  log.cause = r.record.cause;
  for (const AgentUpdate& u : update_agents(system_, r.batch, config_)) log.aborted_updates += u.aborted ? 1 : 0;
  ++episode_;
  return log;
}

std::vector<EpisodeLog> Trainer::run(int episodes) {
  std::vector<EpisodeLog> out;
  for (int i = 0; i < episodes; ++i) out.push_back(run_episode());
  return out;
}

}  // namespace csaot::learn
