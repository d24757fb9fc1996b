// Copyright 2026 The cvcz Authors
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

#ifndef CVCZ_CHECKS_H
#define CVCZ_CHECKS_H

#include <string>
#include <vector>

namespace cvcz {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Physics invariants of the library, evaluated at fixed parameter points.
/// Backs the `check` CLI command.
std::vector<CheckResult> run_property_checks();

}  // namespace cvcz

#endif
