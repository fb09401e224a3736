// Copyright 2026 The Motionbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace motionbench {

// Exit codes: 0 success, 1 failed check or strict warning, 2 usage or config error,
// 3 schema, consistency or I/O error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace motionbench
