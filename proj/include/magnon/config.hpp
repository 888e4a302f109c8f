// Copyright 2026 The magnonsim Authors
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


#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "magnon/experiments.hpp"

namespace magnon {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid configuration; carries the dotted path of the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Complete default configuration. It doubles as the schema: user documents
/// may only contain keys that exist here.
nlohmann::json default_config();

/// Recursively merges `user` into `base`, rejecting unknown keys.
void merge_config(nlohmann::json& base, const nlohmann::json& user, const std::string& prefix = "");

/// Applies "dotted.path=value". The value is parsed as JSON when possible and
/// kept as a string otherwise. The path must exist in the document.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Default document, merged with the file at `path` (if non-empty) and then
/// with each override in order.
nlohmann::json load_config(const std::string& path, const std::vector<std::string>& overrides);

/// A grid given either as a list of numbers or as {"start", "stop", "step"}.
std::vector<double> grid_from_json(const nlohmann::json& j, const std::string& key);

ModelConfig model_from_config(const nlohmann::json& doc);
NovelConfig novel_from_config(const nlohmann::json& doc);
EsrConfig esr_from_config(const nlohmann::json& doc);
RamseyConfig ramsey_from_config(const nlohmann::json& doc);
/// Scenario preset with the tomography section's non-null overrides applied.
Scenario tomography_from_config(const nlohmann::json& doc);
RunOptions run_from_config(const nlohmann::json& doc);

}  // namespace magnon
