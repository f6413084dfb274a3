#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unitarize/linalg.h"

namespace unitarize::cli {

using nlohmann::json;

enum class Format { kJson, kText };

std::string fnv1a_hex(std::string_view bytes);

json tolerances_to_json(const ToleranceConfig& cfg);

/// Structured result of one CLI invocation. Keys serialize sorted; doubles
/// print in shortest round-trip form, so identical inputs give identical
/// bytes.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  /// Registers an input payload; the digest covers every input in name order.
  void add_input(const std::string& name, json payload) { inputs_[name] = std::move(payload); }

  json& verdicts() { return verdicts_; }
  json& matrices() { return matrices_; }
  json& residuals() { return residuals_; }
  json& values() { return values_; }
  void warn(std::string w) { warnings_.push_back(std::move(w)); }
  void warn_all(const std::vector<std::string>& ws) {
    warnings_.insert(warnings_.end(), ws.begin(), ws.end());
  }
  void set_tolerances(const ToleranceConfig& cfg) { tolerances_ = cfg; }

  json to_json() const;
  std::string render(Format f) const;

 private:
  std::string command_;
  json inputs_ = json::object();
  json verdicts_ = json::object();
  json matrices_ = json::object();
  json residuals_ = json::object();
  json values_ = json::object();
  std::vector<std::string> warnings_;
  ToleranceConfig tolerances_;
};

}  // namespace unitarize::cli
