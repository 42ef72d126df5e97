#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "issuebench/errors.hpp"
#include "issuebench/pipeline.hpp"

namespace {

void print_result(const char* stage, const issuebench::StageResult& result) {
  std::printf("%s: %lld completed, %lld skipped, %zu failed\n", stage, result.completed,
              result.skipped, result.failures.size());
  for (const auto& [paper_id, error] : result.failures) {
    std::fprintf(stderr, "  %s: %s\n", paper_id.c_str(), error.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"issuebench: blinded issue-level backtesting for review sources"};
  app.require_subcommand(1);

  std::string corpus;
  std::string config_path;
  std::vector<std::string> overrides;
  long long seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", corpus, "corpus root directory")->required();
    cmd->add_option("--config", config_path, "config file (key = value lines)")->required();
    cmd->add_option("--seed", seed, "run seed (overrides the config)");
    cmd->add_option("--set", overrides, "extra key=value overrides")->take_all();
  };

  CLI::App* generate = app.add_subcommand("generate", "write missing baseline review files");
  CLI::App* judge = app.add_subcommand("judge", "blind, judge and unblind every paper");
  CLI::App* report = app.add_subcommand("report", "emit tables, figure data and the summary");
  add_common(generate);
  add_common(judge);
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  try {
    issuebench::RunConfig config = issuebench::load_config(config_path);
    if (seed >= 0) {
      config.seed = static_cast<std::uint64_t>(seed);
    }
    for (const std::string& item : overrides) {
      const size_t eq = item.find('=');
      if (eq == std::string::npos) {
        throw issuebench::ConfigError("--set expects key=value, got " + item);
      }
      issuebench::apply_override(config, item.substr(0, eq), item.substr(eq + 1));
    }

    issuebench::StageResult result;
    if (generate->parsed()) {
      result = issuebench::cmd_generate(corpus, config);
      print_result("generate", result);
    } else if (judge->parsed()) {
      result = issuebench::cmd_judge(corpus, config);
      print_result("judge", result);
    } else {
      result = issuebench::cmd_report(corpus, config);
      print_result("report", result);
    }
    return result.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
