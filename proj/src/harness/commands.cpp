#include "csaot/harness/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "csaot/errors.hpp"
#include "csaot/harness/checkpoint.hpp"
#include "csaot/harness/config.hpp"
#include "csaot/harness/trace.hpp"
#include "csaot/learn/trainer.hpp"
#include "csaot/sim/maps.hpp"

namespace csaot::harness {

namespace fs = std::filesystem;

EvalSummary summarize(const std::string& map, const std::string& method,
                      const std::vector<learn::EpisodeRecord>& records) {
  EvalSummary s;
  s.map = map;
  s.method = method;
  s.episodes = static_cast<int>(records.size());
  if (records.empty()) return s;
  const double n = static_cast<double>(records.size());
  for (const auto& r : records) {
    s.el_mean += r.el;
    s.cr_mean += r.cr;
  }
  s.el_mean /= n;
  s.cr_mean /= n;
  double el_var = 0.0, cr_var = 0.0;
  for (const auto& r : records) {
    el_var += (r.el - s.el_mean) * (r.el - s.el_mean);
    cr_var += (r.cr - s.cr_mean) * (r.cr - s.cr_mean);
  }
  s.el_std = std::sqrt(el_var / n);
  s.cr_std = std::sqrt(cr_var / n);
  return s;
}

std::string metrics_header() { return "map,method,episodes,el_mean,el_std,cr_mean,cr_std"; }

std::string metrics_row(const EvalSummary& s) {
  return s.map + "," + s.method + "," + std::to_string(s.episodes) + "," + format_double(s.el_mean) + "," +
         format_double(s.el_std) + "," + format_double(s.cr_mean) + "," + format_double(s.cr_std);
}

sim::MapSpec resolve_map(const std::string& name) {
  for (const auto& n : sim::builtin_map_names())
    if (n == name) return sim::load_map(name);
  std::error_code ec;
  if (!name.empty() && fs::is_regular_file(name, ec)) return sim::load_map_file(name);
  std::string known;
  for (const auto& n : sim::builtin_map_names()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown map '" + name + "' (built-in maps: " + known + ")");
}

std::uint64_t eval_seed(const std::vector<std::uint64_t>& seeds, int i) {
  if (seeds.empty()) throw InputError("evaluation needs at least one seed");
  const std::size_t m = seeds.size();
  return learn::mix_seed(seeds[static_cast<std::size_t>(i) % m], static_cast<std::size_t>(i) / m);
}

std::vector<learn::EpisodeRecord> evaluate(const agents::AgentSystem& system, const sim::World& world, int episodes,
                                           const std::vector<std::uint64_t>& seeds,
                                           const rewards::RewardWeights& weights, bool record_steps) {
  if (episodes < 0) throw InputError("episodes must be non-negative");
  if (seeds.empty()) throw InputError("evaluation needs at least one seed");
  std::vector<learn::EpisodeRecord> records(static_cast<std::size_t>(episodes));
  learn::EpisodeOptions opts;
  opts.epsilon = 0.0;
  opts.mode = agents::ActMode::kMean;
  opts.weights = weights;
  opts.record_steps = record_steps;
  opts.collect = false;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < episodes; ++i) {
    agents::AgentSystem local = system;
    records[static_cast<std::size_t>(i)] = learn::run_episode(local, world, eval_seed(seeds, i), opts).record;
  }
  return records;
}

std::uint64_t init_seed(std::uint64_t seed) { return learn::mix_seed(seed, 0x1A17ULL << 32); }

namespace {

RunConfig config_or_default(const std::optional<std::string>& path) {
  if (!path) return RunConfig{};
  try {
    return load_config(*path);
  } catch (const ParseError& e) {
    throw InputError(e.what());
  }
}

}  // namespace

int train_command(const TrainArgs& args, std::ostream& out, std::ostream&) {
  RunConfig config = config_or_default(args.config);
  const agents::Method method = agents::parse_method(args.method);
  if (args.episodes) {
    if (*args.episodes < 0) throw InputError("--episodes must be non-negative");
    config.train.episodes = *args.episodes;
  }
  const sim::MapSpec map = resolve_map(args.map);
  const sim::World world(map, config.vehicle);
  ensure_directory(args.out);

  agents::AgentSystem system(method, config.network, config.sensors());
  system.init(init_seed(args.seed));
  learn::Trainer trainer(system, world, config.train, config.rewards, args.seed);

  std::string log = "episode,epsilon,el,cr,cr_raw,cause,aborted_updates\n";
  for (int i = 0; i < config.train.episodes; ++i) {
    const learn::EpisodeLog e = trainer.run_episode();
    log += std::to_string(e.episode) + "," + format_double(e.epsilon) + "," + std::to_string(e.el) + "," +
           format_double(e.cr) + "," + format_double(e.cr_raw) + "," + learn::cause_name(e.cause) + "," +
           std::to_string(e.aborted_updates) + "\n";
  }
  write_text_file(args.out + "/train_log.csv", log);
  CheckpointMeta meta{map.name, args.seed, trainer.episodes_done(), trainer.epsilon()};
  save_checkpoint(args.out + "/checkpoint.json", system, config, meta);
  write_text_file(args.out + "/config.json", config_to_json(config).dump(2) + "\n");
  out << "trained " << agents::method_name(method) << " on " << map.name << " for " << config.train.episodes
      << " episodes -> " << args.out << "\n";
  return kExitOk;
}

int eval_command(const EvalArgs& args, std::ostream& out, std::ostream&) {
  if (args.episodes < 0) throw InputError("--episodes must be non-negative");
  if (args.seeds.empty()) throw InputError("--seeds needs at least one value");
  std::optional<agents::Method> method;
  if (args.method) method = agents::parse_method(*args.method);
  std::optional<agents::NetworkConfig> network;
  if (args.config) network = config_or_default(args.config).network;
  const sim::MapSpec map = resolve_map(args.map);
  LoadedCheckpoint ck = load_checkpoint(args.checkpoint, method, network);
  const sim::World world(map, ck.config.vehicle);
  ensure_directory(args.out);

  const auto records = evaluate(ck.system, world, args.episodes, args.seeds, ck.config.rewards, args.write_traces);
  std::string episodes_csv = "episode,seed,el,cr,cr_raw,cause\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    episodes_csv += std::to_string(i) + "," + std::to_string(r.seed) + "," + std::to_string(r.el) + "," +
                    format_double(r.cr) + "," + format_double(r.cr_raw) + "," + learn::cause_name(r.cause) + "\n";
    if (args.write_traces) {
      char name[40];
      std::snprintf(name, sizeof name, "/traces/episode_%04zu.jsonl", i);
      write_trace(args.out + name, r, map, ck.config.camera);
    }
  }
  write_text_file(args.out + "/episodes.csv", episodes_csv);
  const EvalSummary s = summarize(map.name, agents::method_name(ck.system.method()), records);
  write_text_file(args.out + "/metrics.csv", metrics_header() + "\n" + metrics_row(s) + "\n");
  out << metrics_header() << "\n" << metrics_row(s) << "\n";
  return kExitOk;
}

int replay_command(const std::string& trace, const std::string& out_dir, std::ostream& out, std::ostream&) {
  const Trace t = read_trace(trace);
  const auto frames = render_trace(t, out_dir);
  out << "wrote " << frames.size() << " frames to " << out_dir << "\n";
  return kExitOk;
}

int maps_list_command(std::ostream& out) {
  for (const auto& name : sim::builtin_map_names()) {
    const sim::MapSpec m = sim::builtin_map(name);
    out << name << "  max_el=" << m.max_el << " min_cr=" << format_double(m.min_cr)
        << " obstacles=" << m.obstacles.size() << "\n";
  }
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const MismatchError& e) {
    err << "error: checkpoint mismatch: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace csaot::harness
