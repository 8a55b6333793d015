#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  namespace cli = weakgibbs::cli;
  std::vector<std::string> args(argv, argv + argc);
  args = cli::normalize_arguments(std::move(args));

  CLI::App app{"weakgibbs: pressure, Gibbs certificates and dimension spectra on subshifts of finite type"};
  app.require_subcommand(1);
  cli::Options opts;
  std::string out = ".";
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "JSON experiment configuration (schema 1)")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--n-max", opts.n_max, "override n_max");
    sub->add_option("--tol", opts.tol, "override tol");
    sub->add_option("--seed", opts.seed, "override seed");
    sub->add_option("--threads", opts.threads, "worker threads (results do not depend on it)");
  }

  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }
  opts.out = out;
  const std::string command = app.get_subcommands().front()->get_name();
  return cli::run(command, opts, std::cerr);
}
