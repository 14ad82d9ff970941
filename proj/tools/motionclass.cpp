#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "motionclass/config.hpp"
#include "motionclass/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace motionclass;
  CLI::App app{"Self-supervised moving-obstacle detection, tracking, and motion-pattern classification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::string stages;
  bool heldout = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config (default: $MOTIONCLASS_CONFIG, else built-in defaults)");
    sub->add_option("--out", out_dir, "Artifact directory");
    sub->add_option("--seed", seed, "Master seed overriding the config");
  };
  for (const char* name : {"extract", "cluster", "classify", "evaluate", "overlay"})
    add_common(app.add_subcommand(name, std::string("Run the ") + name + " stage"));
  auto* run = app.add_subcommand("run", "Run several stages in order");
  add_common(run);
  run->add_option("--stages", stages, "Comma-separated stages (default: all)");
  auto* render = app.add_subcommand("render", "Dump the synthetic scene as PNG frames plus truth.jsonl");
  add_common(render);
  render->add_flag("--heldout", heldout, "Render the held-out scene");
  auto* dump = app.add_subcommand("config", "Print the effective config as JSON");
  add_common(dump);

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig config;
    if (const auto path = resolve_config_path(config_path)) config = load_config(*path);
    for (auto* sub : app.get_subcommands())
      if (sub->get_option("--seed")->count() > 0) config.seed = seed;

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "config") {
      std::cout << to_json(config).dump(2) << '\n';
    } else if (name == "render") {
      render_scene(config, heldout, out_dir);
    } else if (name == "run") {
      run_pipeline(config, parse_stages(stages.empty() ? "run" : stages), out_dir);
    } else {
      run_pipeline(config, parse_stages(name), out_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "motionclass: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
