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


#pragma once

#include <functional>

namespace pq {

/// Caps the worker count used by parallel_for. k <= 0 restores the default
/// (hardware concurrency).
void set_thread_limit(int k);
int thread_limit();

/// Runs body(i) for i in [begin, end). Each index is visited exactly once, so
/// bodies that write only to slot i give results independent of the thread
/// count. Exceptions from the body are rethrown on the calling thread.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace pq
