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

#ifndef CVCZ_CLI_H
#define CVCZ_CLI_H

#include <ostream>
#include <string>

#include "cvcz/analysis.h"

namespace cvcz {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_BAD_FLAGS = 2;
constexpr int EXIT_IO = 3;

/// Six significant digits, trailing zeros kept ("%#.6g").
std::string format_number(double v);

/// Header line, then one line per row; ',' separated, '\n' terminated.
std::string to_csv(const Table &table);
std::string to_json(const Table &table);

/// Entry point of the `cvcz` tool. Subcommands: fidelity, reproduce,
/// optimize, convergence, check. Returns the process exit code.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cvcz

#endif
