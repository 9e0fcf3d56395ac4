#include "core/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace utie {
namespace {

std::mutex g_sink_mutex;
WarningSink g_sink = nullptr;
void* g_sink_user = nullptr;

}  // namespace

void set_warning_sink(WarningSink sink, void* user) noexcept {
  std::lock_guard lock(g_sink_mutex);
  g_sink = sink;
  g_sink_user = user;
}

void warn(std::string_view message) {
  std::lock_guard lock(g_sink_mutex);
  if (g_sink != nullptr) {
    g_sink(message, g_sink_user);
    return;
  }
  std::fprintf(stderr, "warning: %.*s\n", static_cast<int>(message.size()), message.data());
}

}  // namespace utie
