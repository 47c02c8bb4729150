// Copyright 2026 The absa-pair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABSA_TYPES_H_
#define ABSA_TYPES_H_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace absa {

// Error hierarchy. The CLI maps ParseError/ValidationError/ContractViolation
// to exit status 1 and IoError to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Declaration order is the canonical polarity order used for candidate
// generation and every tie break.
enum class Polarity { kPositive, kNegative, kNeutral, kConflict, kNone };

inline constexpr Polarity kAllPolarities[] = {
    Polarity::kPositive, Polarity::kNegative, Polarity::kNeutral,
    Polarity::kConflict, Polarity::kNone};

std::string_view polarity_name(Polarity p);

// Case-insensitive. Returns nullopt for anything outside the five names.
std::optional<Polarity> parse_polarity(std::string_view s);

// tabsa: targeted (SentiHood); absa: aspect-only (SemEval-2014 Task 4).
enum class Task { kTabsa, kAbsa };

std::string_view task_name(Task t);
std::optional<Task> parse_task(std::string_view s);

// {positive, negative, none} for tabsa, all five values for absa; canonical
// order.
std::span<const Polarity> task_polarities(Task t);
bool polarity_allowed(Task t, Polarity p);

enum class Method { kQaM, kNliM, kQaB, kNliB, kSingle };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view s);
inline bool is_binary_method(Method m) {
  return m == Method::kQaB || m == Method::kNliB;
}

// One cell of the label grid: (sentence, target or none, aspect).
struct GroupKey {
  std::string sentence_id;
  std::optional<int> target;
  std::string aspect;

  auto operator<=>(const GroupKey&) const = default;
  bool operator==(const GroupKey&) const = default;
};

// "<sentence_id>|<target index or ->|<aspect>"
std::string group_id(const GroupKey& key);
GroupKey parse_group_id(std::string_view id);

// Label names a classifier sees for examples of this method/task.
std::vector<std::string> label_set(Method m, Task t);

inline constexpr std::string_view kYes = "yes";
inline constexpr std::string_view kNo = "no";

}  // namespace absa

#endif  // ABSA_TYPES_H_
