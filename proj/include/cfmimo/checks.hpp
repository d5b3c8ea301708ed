// Copyright 2026 The cfmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

namespace cfmimo {

struct CheckResult {
  std::string id;
  std::string title;
  bool pass = false;
  /// Worst case or first failure, human readable.
  std::string detail;
  double seconds = 0.0;
};

/// Ids of the suite run by `analyze check`, in order. "A<n>" are the
/// acceptance criteria, "I<n>" further invariants.
std::vector<std::string> check_ids();

/// Runs one check. Unknown ids throw InvalidConfig.
CheckResult run_check(const std::string& id);

std::vector<CheckResult> run_checks(const std::vector<std::string>& ids);

}  // namespace cfmimo
