/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <functional>

namespace shk {

// Runs body(i) for i in [0, count) on up to `workers` threads, in contiguous
// blocks. Exceptions are rethrown on the caller's thread (lowest index wins).
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

// Workers from SHK_WORKERS, or 1.
int default_workers();

}  // namespace shk
