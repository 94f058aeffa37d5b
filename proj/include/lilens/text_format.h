/*
 * Copyright 2026 The lilens Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LILENS_TEXT_FORMAT_H_
#define LILENS_TEXT_FORMAT_H_

#include <optional>
#include <string>
#include <string_view>

namespace lilens {

// Shortest decimal that round-trips to the same double.
std::string FormatShortest(double value);
// Empty string for nullopt.
std::string FormatShortest(const std::optional<double>& value);
// printf("%.9g")-style output.
std::string FormatSignificant(double value, int digits);
// Rounds half away from zero to `decimals` places.
double RoundTo(double value, int decimals);

// RFC 4180 quoting: the field is quoted when it holds a comma, quote, CR or
// LF; embedded quotes are doubled.
std::string CsvField(std::string_view field);

}  // namespace lilens

#endif  // LILENS_TEXT_FORMAT_H_
