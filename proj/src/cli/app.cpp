#include "ugcmt/cli/app.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "context.hpp"
#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/parallel.hpp"
#include "ugcmt/lexnoise/edit_distance.hpp"

namespace ugcmt::cli {

unsigned Context::workers() const { return resolve_threads(threads); }

LineReader Context::reader(const std::string& path) const {
  if (path == "-") return LineReader(*in, "<stdin>");
  return LineReader(std::filesystem::path(path));
}

LineWriter Context::writer(const std::string& path) const {
  if (path == "-") return LineWriter(*out);
  return LineWriter(std::filesystem::path(path));
}

void Context::check_distinct(const std::vector<std::string>& inputs,
                             const std::vector<std::string>& outputs) const {
  for (const auto& o : outputs) {
    if (o.empty() || o == "-" || !std::filesystem::exists(o)) continue;
    for (const auto& i : inputs) {
      if (i.empty() || i == "-" || !std::filesystem::exists(i)) continue;
      if (std::filesystem::equivalent(i, o)) {
        throw UsageError(fmt::format("output '{}' would overwrite input '{}'", o, i));
      }
    }
  }
}

void Context::note(const std::string& message) const {
  if (!quiet) *err << message << '\n';
}

void add_io(CLI::App* cmd, std::string& input, std::string& output) {
  cmd->add_option("-i,--input", input, "Input file ('-' for stdin)")->capture_default_str();
  cmd->add_option("-o,--output", output, "Output file ('-' for stdout)")->capture_default_str();
}

namespace {

// Deepest selected subcommand.
const CLI::App* leaf(const CLI::App& app) {
  const CLI::App* cur = &app;
  for (;;) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) return cur;
    cur = subs.front();
  }
}

std::string command_path(const CLI::App* app) {
  std::string path;
  for (const CLI::App* a = app; a != nullptr && a->get_parent() != nullptr; a = a->get_parent()) {
    path = path.empty() ? a->get_name() : a->get_name() + " " + path;
  }
  return path;
}

std::string help_text(const CLI::App* cmd) {
  if (cmd->get_parent() == nullptr) return cmd->help();
  std::string prev = "ugcmt";
  const auto parent = command_path(cmd->get_parent());
  if (!parent.empty()) prev += " " + parent;
  return cmd->help(prev);
}

std::optional<std::string> suggest(const CLI::App* app, const std::string& given) {
  std::string flag = given.substr(0, given.find('='));
  std::string best;
  unsigned best_d = 3;
  for (const CLI::App* a = app; a != nullptr; a = a->get_parent()) {
    for (const CLI::Option* opt : a->get_options()) {
      for (const auto& name : opt->get_lnames()) {
        const auto d = lexnoise::edit_distance("--" + name, flag,
                                               lexnoise::EditOptions{false, 10})
                           .distance;
        if (d < best_d) {
          best_d = d;
          best = "--" + name;
        }
      }
    }
    for (const CLI::App* sub : a->get_subcommands({})) {
      const auto d =
          lexnoise::edit_distance(sub->get_name(), flag, lexnoise::EditOptions{false, 10})
              .distance;
      if (d < best_d) {
        best_d = d;
        best = sub->get_name();
      }
    }
  }
  if (best.empty()) return std::nullopt;
  return best;
}

// Options of the root and the leaf with their effective values.
nlohmann::json typed(const CLI::Option* opt, const std::string& v) {
  const auto type = opt->get_type_name();
  if (v.empty() || !(type == "INT" || type == "UINT" || type == "FLOAT")) return v;
  auto j = nlohmann::json::parse(v, nullptr, false);
  return j.is_number() ? j : nlohmann::json(v);
}

nlohmann::json effective_config(const CLI::App& root, const CLI::App* cmd) {
  nlohmann::json cfg = nlohmann::json::object();
  for (const CLI::App* a : {&root, cmd}) {
    for (const CLI::Option* opt : a->get_options()) {
      const auto name = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
      if (name == "help" || name == "version") continue;
      const auto& res = opt->results();
      if (opt->get_items_expected_max() == 0) {
        cfg[name] = opt->count() > 0;
      } else if (res.empty()) {
        cfg[name] = typed(opt, opt->get_default_str());
      } else if (res.size() == 1) {
        cfg[name] = typed(opt, res.front());
      } else {
        cfg[name] = res;
      }
    }
    if (a == cmd) break;
  }
  return cfg;
}

int report(std::ostream& err, const char* kind, const std::exception& e, int code) {
  err << "ugcmt: " << kind << ": " << e.what() << '\n';
  log::emit(log::Level::kError, "failed", {{"kind", kind}, {"message", e.what()}, {"exit", code}});
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Context ctx;
  ctx.in = &in;
  ctx.out = &out;
  ctx.err = &err;

  CLI::App app{"Preprocessing and evaluation toolkit for translating user-generated content",
               "ugcmt"};
  app.set_version_flag("--version", std::string(UGCMT_VERSION));
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  app.require_subcommand(1);
  app.formatter(std::make_shared<CLI::Formatter>());

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Random seed (required by randomized commands in --strict mode)");
  app.add_option("--threads", ctx.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_flag("--strict", ctx.strict, "Fail on malformed records and require explicit seeds");
  app.add_option("--log", ctx.log_path, "Append JSON-lines run log to FILE");
  app.add_flag("-q,--quiet", ctx.quiet, "Suppress summaries and warnings on stderr");

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-run a command from its run log");
  replay->add_option("log", replay_path, "Run log written with --log")->required();

  add_case_commands(app, ctx);
  add_rarechar_commands(app, ctx);
  add_noise_commands(app, ctx);
  add_corpus_commands(app, ctx);
  add_eval_commands(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << help_text(leaf(app));
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << UGCMT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto extras = app.remaining(true);
    if (dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr) {
      err << "ugcmt: usage error: unexpected arguments:";
      for (const auto& x : extras) err << ' ' << x;
      err << '\n';
    } else {
      err << "ugcmt: usage error: " << e.what() << '\n';
    }
    bool suggested = false;
    for (const auto& extra : extras) {
      if (auto s = suggest(leaf(app), extra)) {
        err << fmt::format("ugcmt: unknown argument '{}'; did you mean '{}'?\n", extra, *s);
        suggested = true;
        break;
      }
    }
    if (const auto* l = leaf(app); !suggested && l != &app) {
      err << "run 'ugcmt " << command_path(l) << " --help'\n";
    }
    return kExitUsage;
  }

  const CLI::App* cmd = leaf(app);
  if (cmd == replay) {
    std::ifstream log_in(replay_path);
    if (!log_in) {
      err << "ugcmt: usage error: cannot read run log '" << replay_path << "'\n";
      return kExitUsage;
    }
    // Logs are appended to; the most recent run record wins.
    nlohmann::json rec;
    for (std::string line; std::getline(log_in, line);) {
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.is_object() && j.value("event", "") == "run" && j.contains("replay")) {
        rec = std::move(j);
      }
    }
    if (rec.is_null()) {
      err << "ugcmt: usage error: '" << replay_path << "' is not a run log\n";
      return kExitUsage;
    }
    auto replay_args = rec["replay"].get<std::vector<std::string>>();
    if (ctx.quiet) replay_args.insert(replay_args.begin(), "--quiet");
    if (!ctx.log_path.empty()) replay_args.insert(replay_args.begin(), {"--log", ctx.log_path});
    return run(replay_args, in, out, err);
  }

  const bool randomized =
      std::find(ctx.randomized.begin(), ctx.randomized.end(), cmd) != ctx.randomized.end();
  if (randomized && !seed && ctx.strict) {
    err << fmt::format("ugcmt: usage error: '{}' is randomized; --strict requires --seed\n",
                       command_path(cmd));
    return kExitUsage;
  }
  ctx.seed = seed.value_or(0);
  ctx.seed_given = seed.has_value();

  // Run log: the first record carries everything needed to replay the run.
  std::unique_ptr<std::ofstream> log_file;
  if (!ctx.log_path.empty()) {
    log_file = std::make_unique<std::ofstream>(ctx.log_path, std::ios::app);
    if (!*log_file) {
      err << "ugcmt: usage error: cannot open log '" << ctx.log_path << "'\n";
      return kExitUsage;
    }
    std::vector<std::string> replay_args;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--log") {
        ++i;
        continue;
      }
      if (args[i].rfind("--log=", 0) == 0 || args[i].rfind("--seed", 0) == 0) {
        if (args[i] == "--seed") ++i;
        continue;
      }
      replay_args.push_back(args[i]);
    }
    replay_args.insert(replay_args.begin(), {"--seed", std::to_string(ctx.seed)});
    nlohmann::json rec = {{"event", "run"},
                          {"version", UGCMT_VERSION},
                          {"command", command_path(cmd)},
                          {"argv", args},
                          {"seed", ctx.seed},
                          {"seed_given", ctx.seed_given},
                          {"threads", ctx.workers()},
                          {"config", effective_config(app, cmd)},
                          {"replay", replay_args}};
    *log_file << rec.dump() << '\n';
  }
  auto previous = log::set_sink([&](const log::Event& ev) {
    if (log_file) {
      nlohmann::json j = {{"event", ev.name}, {"level", log::level_name(ev.level)}};
      if (!ev.fields.is_null()) j["fields"] = ev.fields;
      *log_file << j.dump() << '\n';
    }
    // "failed" has already been printed by report().
    if (!ctx.quiet && ev.level != log::Level::kInfo && ev.name != "failed") {
      err << "ugcmt: " << log::level_name(ev.level) << ": " << ev.name;
      if (!ev.fields.is_null()) err << ' ' << ev.fields.dump();
      err << '\n';
    }
  });
  struct Restore {
    log::Sink sink;
    ~Restore() { log::set_sink(std::move(sink)); }
  } restore{std::move(previous)};

  int code = kExitOk;
  try {
    auto it = ctx.actions.find(cmd);
    if (it == ctx.actions.end()) {
      err << help_text(cmd);
      code = kExitUsage;
    } else {
      it->second();
      out.flush();
    }
  } catch (const UsageError& e) {
    code = report(err, "usage error", e, kExitUsage);
  } catch (const ConfigError& e) {
    code = report(err, "configuration error", e, kExitUsage);
  } catch (const CLI::ParseError& e) {
    code = report(err, "usage error", e, kExitUsage);
  } catch (const std::exception& e) {
    code = report(err, "error", e, kExitData);
  }
  if (log_file) *log_file << nlohmann::json{{"event", "exit"}, {"code", code}}.dump() << '\n';
  return code;
}

int run(int argc, const char* const* argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace ugcmt::cli
