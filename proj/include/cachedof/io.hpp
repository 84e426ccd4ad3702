// SPDX-License-Identifier: Apache-2.0
//
// cachedof: delivery-time analysis for multi-antenna coded caching
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "cachedof/dof_region.hpp"
#include "cachedof/ndt.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cachedof
{

struct ParseError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Bumped whenever a CSV column is added, removed or renamed.
inline constexpr int kCsvSchemaVersion = 1;

/// Message lengths as `<label> <value>` lines, e.g. `{1,2} 3/20`. Groups not listed are 0;
/// '#' starts a comment line. Throws ParseError with the line number.
LengthVector read_lengths(std::istream &in, int users);
LengthVector read_lengths_file(const std::string &path, int users);

/// Comma-separated values in canonical group order, e.g. "1/5,1/10,0,3/20,1/4,7/20,0".
LengthVector parse_lengths_inline(const std::string &text, int users);

/// Flat `key = value` (or `key value`) text; '#' comments, blank lines ignored.
std::map<std::string, std::string> read_key_values(std::istream &in);
std::map<std::string, std::string> read_key_values_file(const std::string &path);

/// Applies keys k, m, n, l, f, mu, p on top of `base`. Unknown keys are left to the caller.
SystemConfig apply_config(const std::map<std::string, std::string> &kv, SystemConfig base);

/// Comma-separated list of numbers.
std::vector<double> parse_list(const std::string &text);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

/// "p/q" when v is within 1e-9 of a fraction with q <= max_den, else format_number(v).
std::string format_rational(double v, int max_den = 64);

/// Two header lines: `# cachedof <schema> csv v<version>` and, if `stamp` is true, a line with
/// the UTC creation time; then the column names.
void write_csv_header(std::ostream &out, const std::string &schema, const std::vector<std::string> &columns,
                      bool stamp = true);

/// One CSV row; strings are written as given and must not contain commas.
void write_csv_row(std::ostream &out, const std::vector<std::string> &cells);

/// Corner points as a CSV table: index, source, then one column per group label.
void write_corner_points(std::ostream &out, const CornerPointSet &corners, int users, bool stamp = true);

/// Polytope rows `a . d <= c` as a CSV table with the row description.
void write_polytope(std::ostream &out, const Polytope &poly, const std::string &name, bool stamp = true);

nlohmann::json to_json(const DofTuple &d);
nlohmann::json to_json(const NdtBounds &b);
nlohmann::json to_json(const DeliveryPlan &plan);

} // namespace cachedof
