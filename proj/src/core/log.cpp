#include "ugcmt/core/log.hpp"

#include <iostream>

namespace ugcmt::log {
namespace {

std::mutex& sink_mutex() {
  static std::mutex mu;
  return mu;
}

void stderr_sink(const Event& e) {
  if (e.level == Level::kInfo) return;
  std::cerr << "[" << level_name(e.level) << "] " << e.name;
  if (!e.fields.is_null() && !e.fields.empty()) std::cerr << " " << e.fields.dump();
  std::cerr << '\n';
}

Sink& current() {
  static Sink sink = stderr_sink;
  return sink;
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kInfo:
      return "info";
    case Level::kWarn:
      return "warn";
    case Level::kError:
      return "error";
  }
  return "info";
}

Sink set_sink(Sink sink) {
  std::lock_guard lock(sink_mutex());
  Sink prev = std::move(current());
  current() = std::move(sink);
  return prev;
}

void emit(Level level, std::string_view name, nlohmann::json fields) {
  Event e{level, std::string(name), std::move(fields)};
  std::lock_guard lock(sink_mutex());
  if (current()) current()(e);
}

Capture::Capture() {
  previous_ = set_sink([this](const Event& e) {
    std::lock_guard lock(mu_);
    events_.push_back(e);
  });
}

Capture::~Capture() { set_sink(std::move(previous_)); }

std::vector<Event> Capture::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::size_t Capture::count(std::string_view name) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& e : events_) n += e.name == name;
  return n;
}

}  // namespace ugcmt::log
