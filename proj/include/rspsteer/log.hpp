// Copyright 2026 The rspsteer Authors
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

#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <utility>

namespace rspsteer {

enum class LogLevel { Info, Warning };

using LogSink = std::function<void(LogLevel, const std::string&)>;

namespace detail {

struct LogState {
  std::mutex mutex;
  LogSink sink;
};

inline LogState& log_state() {
  static LogState state;
  return state;
}

}  // namespace detail

// Installs the process-wide diagnostics sink. The library is silent until a
// sink is installed; the CLI routes messages to stderr.
inline void set_log_sink(LogSink sink) {
  auto& state = detail::log_state();
  std::lock_guard lock(state.mutex);
  state.sink = std::move(sink);
}

inline void log_message(LogLevel level, const std::string& message) {
  auto& state = detail::log_state();
  std::lock_guard lock(state.mutex);
  if (state.sink) state.sink(level, message);
}

}  // namespace rspsteer
