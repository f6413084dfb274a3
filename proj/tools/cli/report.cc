#include "cli/report.h"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace unitarize::cli {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json tolerances_to_json(const ToleranceConfig& cfg) {
  return {{"eig_cluster_tol", cfg.eig_cluster_tol},
          {"psd_tol", cfg.psd_tol},
          {"unitarity_tol", cfg.unitarity_tol},
          {"cesaro_horizon", cfg.cesaro_horizon},
          {"cesaro_rel_tol", cfg.cesaro_rel_tol},
          {"defect_rcond", cfg.defect_rcond}};
}

json Report::to_json() const {
  json digest_input = {{"command", command_},
                       {"inputs", inputs_},
                       {"tolerances", tolerances_to_json(tolerances_)}};
  return {{"command", command_},
          {"inputs_digest", fnv1a_hex(digest_input.dump())},
          {"verdicts", verdicts_},
          {"matrices", matrices_},
          {"residuals", residuals_},
          {"values", values_},
          {"warnings", warnings_},
          {"tolerances_used", tolerances_to_json(tolerances_)}};
}

namespace {

void render_matrix(std::ostringstream& out, const json& m) {
  const auto n = m["dim"].get<std::size_t>();
  const json& data = m["data"];
  const bool vector = m.value("kind", "") == "vector";
  const std::size_t rows = vector ? 1 : n;
  for (std::size_t i = 0; i < rows; ++i) {
    out << "   ";
    for (std::size_t k = 0; k < n; ++k) {
      const json& e = data[i * n + k];
      char buf[64];
      std::snprintf(buf, sizeof buf, " %11.6g%+11.6gi", e[0].get<double>(), e[1].get<double>());
      out << buf;
    }
    out << '\n';
  }
}

void render_flat(std::ostringstream& out, const std::string& prefix, const json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      render_flat(out, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
    }
    return;
  }
  out << prefix << ": " << j.dump() << '\n';
}

}  // namespace

std::string Report::render(Format f) const {
  const json j = to_json();
  if (f == Format::kJson) return j.dump(2) + "\n";
  std::ostringstream out;
  out << "command: " << command_ << '\n';
  out << "inputs_digest: " << j["inputs_digest"].get<std::string>() << '\n';
  render_flat(out, "verdict", verdicts_);
  render_flat(out, "residual", residuals_);
  render_flat(out, "value", values_);
  for (auto it = matrices_.begin(); it != matrices_.end(); ++it) {
    out << "matrix " << it.key() << ":\n";
    render_matrix(out, it.value());
  }
  for (const auto& w : warnings_) out << "warning: " << w << '\n';
  render_flat(out, "tolerance", j["tolerances_used"]);
  return out.str();
}

}  // namespace unitarize::cli
