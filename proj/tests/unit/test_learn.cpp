#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "csaot/errors.hpp"
#include "csaot/learn/advantage.hpp"
#include "csaot/learn/trainer.hpp"
#include "csaot/nn/ops.hpp"
#include "csaot/sim/maps.hpp"
#include "oracles.hpp"

using namespace csaot;
using namespace csaot::learn;
using agents::AgentSystem;
using agents::Method;
using nn::Tape;

namespace {

agents::NetworkConfig small_net() {
  agents::NetworkConfig c;
  c.encoder_hidden = 16;
  c.embed = 8;
  c.memory = 8;
  c.critic_hidden = 8;
  c.mop.expert_hidden = 8;
  return c;
}

std::vector<Vector> snapshot(agents::AgentCore& a) {
  std::vector<Vector> out;
  for (auto* p : a.parameters()) out.push_back(p->values);
  return out;
}

bool same_bits(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size() || std::memcmp(a[i].data(), b[i].data(), a[i].size() * sizeof(double)) != 0)
      return false;
  return true;
}

EpisodeResult collect(AgentSystem& sys, const std::string& map, std::uint64_t seed, double eps) {
  const sim::World world(sim::builtin_map(map), sys.sensors().vehicle);
  EpisodeOptions opts;
  opts.epsilon = eps;
  opts.record_steps = true;
  return run_episode(sys, world, seed, opts);
}

}  // namespace

TEST_CASE("advantage examples") {
  const Advantages a = compute_advantages({1, 1}, {0.5, 0.5}, 0.95);
  CHECK(a.raw[0] == doctest::Approx(1.475).epsilon(1e-14));
  CHECK(a.raw[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a.returns[0] == doctest::Approx(1.975));
  CHECK(a.normalized[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(a.normalized[1] == doctest::Approx(-1.0).epsilon(1e-6));

  const Advantages z = compute_advantages(Vector(6, 0.0), Vector(6, 0.0), 0.95);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(z.raw[i] == 0.0);
    CHECK(z.normalized[i] == 0.0);
  }
  const Advantages one = compute_advantages({2.0}, {0.5}, 0.95);
  CHECK(one.normalized == Vector{1.5});
  CHECK_THROWS_AS(compute_advantages({1, 2}, {1}, 0.9), InputError);
}

TEST_CASE("advantages match the direct sum") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 40;
    const Vector r = oracle::random_vec(n, rng, -5, 5), v = oracle::random_vec(n, rng, -5, 5);
    const double lam = oracle::random_vec(1, rng, 0, 1)[0];
    const Advantages a = compute_advantages(r, v, lam);
    const Vector ref = oracle::gae_direct(r, v, lam, 1.0);
    for (std::size_t t = 0; t < n; ++t) CHECK(a.raw[t] == doctest::Approx(ref[t]).epsilon(1e-12));

    const Advantages mc = compute_advantages(r, v, 1.0);
    double tail = 0;
    for (std::size_t t = n; t-- > 0;) {
      tail += r[t];
      CHECK(mc.raw[t] == doctest::Approx(tail - v[t]).epsilon(1e-12));
    }
    if (n >= 2) {
      double m = 0, s = 0;
      for (double x : a.normalized) m += x;
      m /= n;
      for (double x : a.normalized) s += (x - m) * (x - m);
      CHECK(std::fabs(m) < 1e-9);
      if (std::sqrt(s / n) > 0.5) CHECK(std::sqrt(s / n) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("ppo policy term matches a per-step loop") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 30;
    const Vector lp = oracle::random_vec(n, rng, -3, 1), old = oracle::random_vec(n, rng, -3, 1);
    const Vector adv = oracle::random_vec(n, rng, -2, 2), ret = oracle::random_vec(n, rng);
    std::vector<bool> explore(n);
    for (std::size_t t = 0; t < n; ++t) explore[t] = rng() % 4 == 0;
    const double clip = oracle::random_vec(1, rng, 0.05, 0.5)[0];
    Tape t;
    const Vector vals = oracle::random_vec(n, rng), ents = oracle::random_vec(n, rng, 0, 2);
    const PpoTerms terms =
        ppo_loss(t.constant(lp), t.constant(vals), t.constant(ents), old, adv, ret, explore, {clip, 0.5, 0.01});
    const double ref = oracle::ppo_policy_loop(lp, old, adv, explore, clip);
    const bool any = std::count(explore.begin(), explore.end(), false) > 0;
    CHECK(terms.policy.valid() == any);
    if (any) CHECK(std::fabs(terms.policy.scalar() - ref) < 1e-12);

    double mse = 0, ent = 0;
    for (std::size_t k = 0; k < n; ++k) {
      mse += (vals[k] - ret[k]) * (vals[k] - ret[k]);
      ent += ents[k];
    }
    mse /= n;
    ent /= n;
    CHECK(terms.loss.scalar() == doctest::Approx(ref + 0.5 * mse - 0.01 * ent).epsilon(1e-12));
  }
}

TEST_CASE("ppo clip examples") {
  Tape t;
  auto contribution = [&](double ratio, double adv) {
    const PpoTerms p = ppo_loss(t.constant({std::log(ratio)}), t.constant({0.0}), t.constant({0.0}), {0.0}, {adv},
                                {0.0}, {false}, {0.2, 0.0, 0.0});
    return -p.policy.scalar();
  };
  CHECK(contribution(1.5, 1.0) == doctest::Approx(1.2));
  CHECK(contribution(0.5, -1.0) == doctest::Approx(-0.8));
  CHECK(contribution(1.0, 0.7) == doctest::Approx(0.7));

  const Vector adv{0.3, -1.2, 2.0};
  const PpoTerms same = ppo_loss(t.constant({-1, -2, -3}), t.constant({0, 0, 0}), t.constant({0, 0, 0}), {-1, -2, -3},
                                 adv, {0, 0, 0}, {false, false, false}, {0.2, 0, 0});
  CHECK(same.policy.scalar() == doctest::Approx(-(0.3 - 1.2 + 2.0) / 3));
}

TEST_CASE("a huge clip gives the unclipped objective") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 20;
    const Vector lp = oracle::random_vec(n, rng, -2, 2), old = oracle::random_vec(n, rng, -2, 2);
    const Vector adv = oracle::random_vec(n, rng, -2, 2);
    Tape t;
    const PpoTerms p = ppo_loss(t.constant(lp), t.constant(Vector(n, 0.0)), t.constant(Vector(n, 0.0)), old, adv,
                                Vector(n, 0.0), std::vector<bool>(n, false), {1e6, 0, 0});
    double ref = 0;
    for (std::size_t k = 0; k < n; ++k) ref += std::exp(lp[k] - old[k]) * adv[k];
    CHECK(p.policy.scalar() == doctest::Approx(-ref / n).epsilon(1e-12));
  }
}

TEST_CASE("exploratory steps carry no policy gradient") {
  std::mt19937_64 rng(4);
  nn::ParamTensor lp("lp", {6});
  lp.values = oracle::random_vec(6, rng, -2, 0);
  const Vector old = oracle::random_vec(6, rng, -2, 0), adv = oracle::random_vec(6, rng, 0.5, 1.5);
  const std::vector<bool> explore{true, false, true, false, false, true};
  {
    lp.zero_grad();
    Tape t;
    const PpoTerms p = ppo_loss(t.param(lp), t.constant(Vector(6, 0.0)), t.constant(Vector(6, 0.0)), old, adv,
                                Vector(6, 0.0), explore, {1e6, 0, 0});
    t.backward(p.loss);
    for (std::size_t i = 0; i < 6; ++i) CHECK((lp.grad[i] == 0.0) == explore[i]);
  }
  {
    lp.zero_grad();
    Tape t;
    const PpoTerms p = ppo_loss(t.param(lp), t.constant(Vector(6, 0.0)), t.constant(Vector(6, 0.0)), old, adv,
                                Vector(6, 0.0), std::vector<bool>(6, true), {0.2, 0.5, 0.01});
    CHECK_FALSE(p.policy.valid());
    t.backward(p.loss);
    for (double g : lp.grad) CHECK(g == 0.0);
  }
}

TEST_CASE("epsilon schedule") {
  CHECK(epsilon_schedule(0) == 0.99);
  CHECK(epsilon_schedule(1) == doctest::Approx(0.891).epsilon(1e-14));
  CHECK(std::fabs(epsilon_schedule(2) - 0.8019) < 1e-12);
  CHECK(epsilon_schedule(500) == 0.02);
  double prev = 1;
  for (int e = 0; e < 100; ++e) {
    const double x = epsilon_schedule(e);
    CHECK(x <= prev);
    CHECK(x >= 0.02);
    prev = x;
  }
  CHECK_THROWS_AS(epsilon_schedule(-1), InputError);
}

TEST_CASE("immediate collision terminates with the penalty") {
  sim::MapSpec map = sim::builtin_map("SingleTurn");
  map.obstacles.push_back(sim::Obstacle::circle(map.spawn.position, 2.0));
  sim::VehicleParams v;
  const sim::World world(map, v);
  AgentSystem sys(Method::kCsaot, small_net(), sensing::Sensors{});
  sys.init(5);
  EpisodeOptions opts;
  opts.epsilon = 0.5;
  opts.record_steps = true;
  const EpisodeResult r = run_episode(sys, world, 6, opts);
  CHECK(r.record.el == 1);
  CHECK(r.record.cr == -50.0);
  CHECK(r.record.cause == TerminalCause::kCollision);
  REQUIRE(r.record.steps.size() == 1);
  CHECK(r.record.steps[0].rewards.collision);
  CHECK(r.batch.length() == 1);
  CHECK(r.batch.agents[3].rewards == Vector{-50.0});
}

TEST_CASE("episode termination and reward bookkeeping") {
  for (Method method : {Method::kCsaot, Method::kSingle}) {
    AgentSystem sys(method, small_net(), sensing::Sensors{});
    sys.init(7);
    for (const std::string& name : sim::builtin_map_names()) {
      const sim::MapSpec map = sim::builtin_map(name);
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const EpisodeResult r = collect(sys, name, seed, seed % 2 ? 1.0 : 0.3);
        const EpisodeRecord& rec = r.record;
        CHECK(rec.el >= 1);
        CHECK(rec.el <= map.max_el);
        REQUIRE(rec.steps.size() == static_cast<std::size_t>(rec.el));
        double sum = 0;
        for (std::size_t i = 0; i < rec.steps.size(); ++i) {
          const auto& rw = rec.steps[i].rewards;
          if (i + 1 < rec.steps.size()) {
            CHECK_FALSE(rw.collision);
            CHECK(sum + rw.global >= map.min_cr);
          }
          sum += rw.global;
        }
        CHECK(rec.cr_raw == sum);
        const auto& last = rec.steps.back().rewards;
        switch (rec.cause) {
          case TerminalCause::kCollision:
            CHECK(last.collision);
            CHECK(last.global == -50.0);
            CHECK(rec.cr == rec.cr_raw);
            break;
          case TerminalCause::kCrFloor:
            CHECK(rec.cr_raw < map.min_cr);
            CHECK(rec.cr == map.min_cr);
            break;
          case TerminalCause::kElCap:
            CHECK(rec.el == map.max_el);
            CHECK(rec.cr == rec.cr_raw);
            break;
          case TerminalCause::kPathComplete:
            CHECK(rec.cr == rec.cr_raw);
            break;
          case TerminalCause::kNone:
            FAIL("episode ended without a cause");
        }
        CHECK(rec.cr >= map.min_cr - 50.0 - 10.0);

        const RolloutBatch& b = r.batch;
        CHECK(b.length() == static_cast<std::size_t>(rec.el));
        const AgentTrajectory& nav = b.agents.back();
        for (std::size_t i = 0; i < rec.steps.size(); ++i) CHECK(nav.rewards[i] == rec.steps[i].rewards.global);
        if (method == Method::kCsaot) {
          REQUIRE(b.agents.size() == 4);
          for (std::size_t i = 0; i < rec.steps.size(); ++i) {
            CHECK(b.agents[0].rewards[i] == rec.steps[i].rewards.r_detect);
            CHECK(b.agents[1].rewards[i] == rec.steps[i].rewards.r_movement);
            CHECK(b.agents[2].rewards[i] == rec.steps[i].rewards.r_obstacle);
          }
        }
      }
    }
  }
}

TEST_CASE("builtin caps") {
  CHECK(sim::builtin_map("Complex").max_el == 80);
  CHECK(sim::builtin_map("Complex").min_cr == -150.0);
  CHECK(sim::builtin_map("SingleTurn").max_el == 15);
  CHECK(sim::builtin_map("SingleTurn").min_cr == -150.0);
}

TEST_CASE("two optimizer steps per agent per episode") {
  AgentSystem sys(Method::kCsaot, small_net(), sensing::Sensors{});
  sys.init(8);
  const EpisodeResult r = collect(sys, "SimpleLoop", 9, 0.5);
  std::vector<std::vector<Vector>> before;
  for (auto& a : sys.agents()) before.push_back(snapshot(a));
  const std::vector<AgentUpdate> ups = update_agents(sys, r.batch, TrainConfig{});
  REQUIRE(ups.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ups[i].optimizer_steps == 2);
    CHECK(ups[i].losses.size() == 2);
    CHECK_FALSE(ups[i].aborted);
    CHECK(sys.agents()[i].optimizer.steps() == 2);
    CHECK_FALSE(same_bits(before[i], snapshot(sys.agents()[i])));
  }
}

TEST_CASE("a zero-advantage batch leaves the actor untouched") {
  AgentSystem sys(Method::kSingle, small_net(), sensing::Sensors{});
  sys.init(10);
  EpisodeResult r = collect(sys, "SingleTurn", 11, 0.0);
  AgentTrajectory traj = r.batch.agents[0];
  std::fill(traj.rewards.begin(), traj.rewards.end(), 0.0);
  std::fill(traj.values.begin(), traj.values.end(), 0.0);
  agents::AgentCore& a = sys.agents()[0];
  std::vector<nn::ParamTensor*> actor;
  a.actor.collect(actor);
  std::vector<Vector> before;
  for (auto* p : actor) before.push_back(p->values);
  const std::vector<Vector> critic_before = [&] {
    std::vector<nn::ParamTensor*> c;
    a.critic.collect(c);
    std::vector<Vector> v;
    for (auto* p : c) v.push_back(p->values);
    return v;
  }();

  TrainConfig cfg;
  cfg.entropy_coef = 0.0;
  update_agent(a, traj, cfg);
  std::vector<Vector> after;
  for (auto* p : actor) after.push_back(p->values);
  CHECK(same_bits(before, after));
  std::vector<nn::ParamTensor*> c;
  a.critic.collect(c);
  std::vector<Vector> critic_after;
  for (auto* p : c) critic_after.push_back(p->values);
  CHECK_FALSE(same_bits(critic_before, critic_after));
}

TEST_CASE("agents learn only from their own reward stream") {
  AgentSystem sys(Method::kCsaot, small_net(), sensing::Sensors{});
  sys.init(12);
  const EpisodeResult r = collect(sys, "Complex", 13, 0.3);
  REQUIRE(r.batch.length() >= 3);
  RolloutBatch permuted = r.batch;
  std::mt19937_64 rng(14);
  Vector& g = permuted.agents[3].rewards;
  std::reverse(g.begin(), g.end());
  std::shuffle(g.begin(), g.end(), rng);
  REQUIRE(g != r.batch.agents[3].rewards);

  AgentSystem a = sys, b = sys;
  update_agents(a, r.batch, TrainConfig{});
  update_agents(b, permuted, TrainConfig{});
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_bits(snapshot(a.agents()[i]), snapshot(b.agents()[i])));
  CHECK_FALSE(same_bits(snapshot(a.agents()[3]), snapshot(b.agents()[3])));
}

TEST_CASE("a non-finite loss aborts and restores the agent") {
  AgentSystem sys(Method::kSingle, small_net(), sensing::Sensors{});
  sys.init(15);
  const EpisodeResult r = collect(sys, "SingleTurn", 16, 0.5);
  AgentTrajectory traj = r.batch.agents[0];
  traj.rewards[traj.size() / 2] = std::numeric_limits<double>::quiet_NaN();
  agents::AgentCore& a = sys.agents()[0];
  const std::vector<Vector> before = snapshot(a);
  const AgentUpdate u = update_agent(a, traj, TrainConfig{});
  CHECK(u.aborted);
  CHECK(u.optimizer_steps == 0);
  CHECK(u.incident.find("non-finite") != std::string::npos);
  CHECK(same_bits(before, snapshot(a)));
  CHECK(a.optimizer.steps() == 0);

  AgentTrajectory ok = r.batch.agents[0];
  CHECK_FALSE(update_agent(a, ok, TrainConfig{}).aborted);
}

TEST_CASE("trainer is deterministic and follows the schedule") {
  auto run = [](std::uint64_t seed) {
    AgentSystem sys(Method::kCsaot, small_net(), sensing::Sensors{});
    sys.init(seed);
    Trainer tr(sys, sim::World(sim::builtin_map("SingleTurn"), sensing::Sensors{}.vehicle), TrainConfig{}, {}, seed);
    auto logs = tr.run(3);
    CHECK(tr.episodes_done() == 3);
    CHECK(tr.epsilon() == epsilon_schedule(3));
    std::vector<std::vector<Vector>> params;
    for (auto& a : sys.agents()) params.push_back(snapshot(a));
    return std::make_pair(logs, params);
  };
  const auto [la, pa] = run(17);
  const auto [lb, pb] = run(17);
  REQUIRE(la.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(la[i].epsilon == epsilon_schedule(static_cast<int>(i)));
    CHECK(la[i].el == lb[i].el);
    CHECK(la[i].cr_raw == lb[i].cr_raw);
  }
  for (std::size_t i = 0; i < pa.size(); ++i) CHECK(same_bits(pa[i], pb[i]));
}

TEST_CASE("train config validation and seeds") {
  TrainConfig c;
  c.gamma = 0.99;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = {};
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  for (TerminalCause k : {TerminalCause::kCollision, TerminalCause::kCrFloor, TerminalCause::kElCap,
                          TerminalCause::kPathComplete, TerminalCause::kNone})
    CHECK(parse_cause(cause_name(k)) == k);
}
