#include "ugcmt/corpusops/filter.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/rng.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt::corpusops {

// ------------------------------------------------------------ language id

CommandLanguageIdentifier::CommandLanguageIdentifier(std::string command)
    : command_(std::move(command)) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw ConfigError(fmt::format("cannot create pipes for '{}': {}", command_,
                                  std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) {
    throw ConfigError(fmt::format("cannot start '{}': {}", command_, std::strerror(errno)));
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  fcntl(from_child_, F_SETFD, FD_CLOEXEC);
  signal(SIGPIPE, SIG_IGN);
}

CommandLanguageIdentifier::~CommandLanguageIdentifier() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

std::string CommandLanguageIdentifier::identify(std::string_view text) {
  std::lock_guard lock(mu_);
  std::string line(text);
  line.push_back('\n');
  std::size_t done = 0;
  while (done < line.size()) {
    const auto n = write(to_child_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw DataError(fmt::format("language-id command '{}' closed its input", command_));
    }
    done += static_cast<std::size_t>(n);
  }
  for (;;) {
    const auto nl = pending_.find('\n');
    if (nl != std::string::npos) {
      std::string code = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      while (!code.empty() && (code.back() == '\r' || code.back() == ' ')) code.pop_back();
      return code;
    }
    char buf[4096];
    const auto n = read(from_child_, buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw DataError(fmt::format("language-id command '{}' stopped answering", command_));
    }
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

// ----------------------------------------------------------------- filters

void FilterConfig::validate() const {
  if (max_words < 1) throw ConfigError("max_words must be at least 1");
  if (!(max_ratio > 1.0)) {
    throw ConfigError(fmt::format("max_ratio must be greater than 1, got {}", max_ratio));
  }
  if (langid && (src_lang.empty() || tgt_lang.empty())) {
    throw ConfigError("language filtering needs both expected languages");
  }
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kNone:
      return "kept";
    case DropReason::kEmpty:
      return "empty";
    case DropReason::kLength:
      return "length";
    case DropReason::kRatio:
      return "ratio";
    case DropReason::kLanguage:
      return "language";
    case DropReason::kDuplicate:
      return "duplicate";
  }
  return "?";
}

FilterDecision filter_pair(const SentencePair& pair, const FilterConfig& config) {
  const auto ns = text::count_words(pair.src);
  const bool has_tgt = pair.tgt.has_value();
  const auto nt = has_tgt ? text::count_words(*pair.tgt) : ns;
  if (ns == 0 || nt == 0) return {false, DropReason::kEmpty};
  if (ns > config.max_words || nt > config.max_words) return {false, DropReason::kLength};
  const auto longer = static_cast<double>(std::max(ns, nt));
  const auto shorter = static_cast<double>(std::min(ns, nt));
  if (longer > config.max_ratio * shorter) return {false, DropReason::kRatio};
  if (config.langid) {
    if (config.langid->identify(pair.src) != config.src_lang ||
        (has_tgt && config.langid->identify(*pair.tgt) != config.tgt_lang)) {
      return {false, DropReason::kLanguage};
    }
  }
  return {};
}

// ------------------------------------------------------------------ dedup

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

bool Deduplicator::insert(const SentencePair& pair) {
  const std::string_view tgt = pair.tgt ? std::string_view(*pair.tgt) : std::string_view();
  // Two independent 64-bit digests; the length prefix separates (ab,c) from (a,bc).
  std::uint64_t a = fnv1a(pair.src, 0xCBF29CE484222325ULL ^ pair.src.size());
  a = fnv1a(tgt, CounterRng::mix(a) ^ (pair.tgt ? 1 : 0));
  const std::uint64_t b0 = std::hash<std::string_view>{}(pair.src);
  const std::uint64_t b1 = std::hash<std::string_view>{}(tgt);
  const std::uint64_t b = CounterRng::mix(b0 ^ CounterRng::mix(b1 + pair.src.size()));
  return seen_.insert({a, b}).second;
}

std::vector<SentencePair> dedup(std::span<const SentencePair> corpus) {
  Deduplicator d;
  std::vector<SentencePair> out;
  for (const auto& p : corpus) {
    if (d.insert(p)) out.push_back(p);
  }
  return out;
}

std::vector<SentencePair> filter_corpus(std::span<const SentencePair> corpus,
                                        const FilterConfig& config, FilterStats* stats) {
  config.validate();
  FilterStats local;
  Deduplicator d;
  std::vector<SentencePair> out;
  for (const auto& p : corpus) {
    ++local.read;
    auto decision = filter_pair(p, config);
    if (decision.keep && config.dedup && !d.insert(p)) {
      decision = {false, DropReason::kDuplicate};
    }
    if (decision.keep) {
      ++local.kept;
      out.push_back(p);
    } else {
      ++local.dropped[static_cast<std::size_t>(decision.reason)];
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace ugcmt::corpusops
