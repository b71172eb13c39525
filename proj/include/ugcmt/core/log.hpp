#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace ugcmt::log {

enum class Level { kInfo, kWarn, kError };

struct Event {
  Level level;
  std::string name;
  nlohmann::json fields;
};

using Sink = std::function<void(const Event&)>;

/// Installs a process-wide sink and returns the previous one. The default
/// sink prints warnings and errors to stderr.
Sink set_sink(Sink sink);

void emit(Level level, std::string_view name, nlohmann::json fields = {});

inline void info(std::string_view name, nlohmann::json fields = {}) {
  emit(Level::kInfo, name, std::move(fields));
}
inline void warn(std::string_view name, nlohmann::json fields = {}) {
  emit(Level::kWarn, name, std::move(fields));
}

std::string_view level_name(Level level);

/// Collects events for the lifetime of the object (tests, batch reports).
class Capture {
 public:
  Capture();
  ~Capture();
  Capture(const Capture&) = delete;
  Capture& operator=(const Capture&) = delete;

  std::vector<Event> events() const;
  std::size_t count(std::string_view name) const;

 private:
  mutable std::mutex mu_;
  std::vector<Event> events_;
  Sink previous_;
};

}  // namespace ugcmt::log
