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


#include "pq/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace pq {

namespace {

std::mutex g_mutex;

WarningSink& sink_ref() {
  static WarningSink sink = [](const std::string& m) { std::cerr << "warning: " << m << "\n"; };
  return sink;
}

}  // namespace

void set_warning_sink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(g_mutex);
  sink_ref() = sink ? std::move(sink) : [](const std::string&) {};
}

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  sink_ref()(message);
}

struct WarningCapture::State {
  std::vector<std::string> messages;
};

WarningCapture::WarningCapture() : state_(new State) {
  std::lock_guard<std::mutex> lock(g_mutex);
  previous_ = sink_ref();
  State* s = state_;
  // Called with g_mutex already held by warn().
  sink_ref() = [s](const std::string& m) { s->messages.push_back(m); };
}

WarningCapture::~WarningCapture() {
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    sink_ref() = previous_;
  }
  delete state_;
}

std::vector<std::string> WarningCapture::messages() const {
  std::lock_guard<std::mutex> lock(g_mutex);
  return state_->messages;
}

}  // namespace pq
