#include <iostream>

#include <CLI11.hpp>

#include "csaot/harness/commands.hpp"

using namespace csaot::harness;

int main(int argc, char** argv) {
  CLI::App app{"CSAOT active object tracking lab"};
  app.require_subcommand(1);

  TrainArgs train;
  int train_episodes = 50;
  std::string train_config;
  auto* tr = app.add_subcommand("train", "Train a system on one map");
  tr->add_option("--map", train.map, "Map name or map file")->required();
  auto* ep_opt = tr->add_option("--episodes", train_episodes, "Training episodes (default 50)");
  tr->add_option("--seed", train.seed, "Random seed");
  tr->add_option("--method", train.method, "csaot or single")->check(CLI::IsMember({"csaot", "single"}));
  tr->add_option("--config", train_config, "JSON run configuration");
  tr->add_option("--out", train.out, "Output directory")->required();

  EvalArgs eval;
  std::string eval_config, eval_method;
  bool no_traces = false;
  auto* ev = app.add_subcommand("eval", "Evaluate a checkpoint with deterministic actions");
  ev->add_option("--checkpoint", eval.checkpoint, "Checkpoint file")->required();
  ev->add_option("--map", eval.map, "Map name or map file")->required();
  ev->add_option("--episodes", eval.episodes, "Evaluation episodes");
  ev->add_option("--seeds", eval.seeds, "Comma-separated seeds")->delimiter(',');
  ev->add_option("--out", eval.out, "Output directory")->required();
  ev->add_option("--config", eval_config, "Configuration the checkpoint must match");
  ev->add_option("--method", eval_method, "Method the checkpoint must hold")->check(CLI::IsMember({"csaot", "single"}));
  ev->add_flag("--no-traces", no_traces, "Skip per-episode JSONL traces");

  std::string trace_path, replay_out;
  auto* rp = app.add_subcommand("replay", "Render a trace as SVG frames");
  rp->add_option("--trace", trace_path, "Trace file (JSONL)")->required();
  rp->add_option("--out", replay_out, "Output directory for frames")->required();

  auto* maps = app.add_subcommand("maps", "Map utilities");
  maps->require_subcommand(1);
  auto* maps_list = maps->add_subcommand("list", "List built-in maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadArgs;
  }

  return guarded(
      [&]() -> int {
        if (tr->parsed()) {
          if (ep_opt->count() > 0) train.episodes = train_episodes;
          if (!train_config.empty()) train.config = train_config;
          return train_command(train, std::cout, std::cerr);
        }
        if (ev->parsed()) {
          if (!eval_config.empty()) eval.config = eval_config;
          if (!eval_method.empty()) eval.method = eval_method;
          eval.write_traces = !no_traces;
          return eval_command(eval, std::cout, std::cerr);
        }
        if (rp->parsed()) return replay_command(trace_path, replay_out, std::cout, std::cerr);
        if (maps_list->parsed()) return maps_list_command(std::cout);
        return kExitBadArgs;
      },
      std::cerr);
}
