#pragma once

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt::cli {

struct Context {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool strict = false;
  bool quiet = false;
  std::string log_path;

  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  /// Leaf subcommand -> action.
  std::map<const CLI::App*, std::function<void()>> actions;
  /// Subcommands whose output depends on the seed.
  std::vector<const CLI::App*> randomized;
  /// Set once a randomized subcommand runs.
  bool seed_given = false;

  unsigned workers() const;

  /// "-" reads stdin.
  LineReader reader(const std::string& path) const;
  /// "-" writes stdout.
  LineWriter writer(const std::string& path) const;

  /// Rejects writing to a file that is also an input.
  void check_distinct(const std::vector<std::string>& inputs,
                      const std::vector<std::string>& outputs) const;

  /// Summary line on stderr unless --quiet.
  void note(const std::string& message) const;
};

void add_case_commands(CLI::App& app, Context& ctx);
void add_rarechar_commands(CLI::App& app, Context& ctx);
void add_noise_commands(CLI::App& app, Context& ctx);
void add_corpus_commands(CLI::App& app, Context& ctx);
void add_eval_commands(CLI::App& app, Context& ctx);

/// Adds -i/--input and -o/--output defaulting to "-".
void add_io(CLI::App* cmd, std::string& input, std::string& output);

}  // namespace ugcmt::cli
