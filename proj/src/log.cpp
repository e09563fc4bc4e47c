/*******************************************************************************
 * @file:   log.cpp
 ******************************************************************************/
#include "ilprefine/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

namespace ilprefine {

namespace {
std::atomic<bool> g_enabled{true};
std::mutex g_mutex;
} // namespace

void set_notices_enabled(const bool enabled) {
  g_enabled = enabled;
}

bool notices_enabled() {
  return g_enabled;
}

void notice(const std::string_view message) {
  if (!g_enabled) {
    return;
  }
  std::lock_guard lock(g_mutex);
  std::cerr << "[ilprefine] " << message << '\n';
}

} // namespace ilprefine
