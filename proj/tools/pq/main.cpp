// Copyright 2026 The phasequant Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// pq: config-driven runner for the phasequant library.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "acceptance/criteria.hpp"
#include "cli/config.hpp"
#include "cli/runner.hpp"
#include "pq/diagnostics.hpp"
#include "pq/parallel.hpp"

namespace {

int threads_from_env() {
  const char* env = std::getenv("PQ_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    std::cerr << "pq: ignoring PQ_THREADS='" << env << "'\n";
    return 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pq: phase-space quantization experiments"};
  app.require_subcommand(1);

  std::string output_dir;
  int threads = 0;
  bool quiet = false;
  app.add_option("--output-dir", output_dir, "Directory for reports (overrides the config)");
  app.add_option("--threads", threads, "Maximum worker threads (default: PQ_THREADS, else all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet, "Only print errors");

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run every task of a config");
  run->add_option("config", config_path, "TOML experiment file")->required();
  CLI::App* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "TOML experiment file")->required();
  CLI::App* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  // Global flags may also follow the subcommand.
  for (CLI::App* sub : {run, validate, selftest}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (threads == 0) threads = threads_from_env();
  pq::set_thread_limit(threads);
  if (quiet) pq::set_warning_sink({});

  if (selftest->parsed()) {
    return pq::acceptance::run_acceptance(std::cout) ? 0 : 1;
  }

  pq::cli::ExperimentConfig config;
  try {
    config = pq::cli::load_config(config_path);
  } catch (const pq::cli::ConfigError& e) {
    std::cerr << "pq: " << e.what() << "\n";
    return 2;
  }
  if (validate->parsed()) {
    if (!quiet) {
      std::cout << config_path << ": ok (" << config.tasks.size() << " task"
                << (config.tasks.size() == 1 ? "" : "s") << ", " << config.windows.size() << " window"
                << (config.windows.size() == 1 ? "" : "s") << ")\n";
    }
    return 0;
  }

  pq::cli::RunOptions options;
  if (!output_dir.empty()) options.output_dir = output_dir;
  options.quiet = quiet;
  options.threads = threads;
  try {
    return pq::cli::run_config(config, options, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "pq: " << e.what() << "\n";
    return 1;
  }
}
