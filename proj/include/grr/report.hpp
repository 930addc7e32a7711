#pragma once

// JSON views of certificates and runs. Key order is fixed by nlohmann's
// sorted object map, so equal values always dump to equal bytes.

#include <string>
#include <vector>

#include "json.hpp"

#include "grr/grrcert.hpp"
#include "grr/perm.hpp"
#include "grr/sampler.hpp"

namespace grr {

inline constexpr const char* kVersion = "0.1.0";

inline std::vector<std::size_t> one_indexed(const std::vector<Point>& pts) {
  std::vector<std::size_t> out;
  for (Point p : pts) out.push_back(static_cast<std::size_t>(p) + 1);
  return out;
}

inline nlohmann::json to_json(const HypothesisChecks& c) {
  return {{"two_p_generated", c.two_p_generated},
          {"y_is_involution", c.y_is_involution},
          {"x_has_order_p", c.x_has_order_p},
          {"yxy_outside_cyclic", c.yxy_outside_cyclic},
          {"p_large_enough", c.p_large_enough},
          {"no_small_index_subgroup", c.no_small_index_subgroup},
          {"connection_set_size_k", c.connection_set_size_k}};
}

/// The witness is reported through the images of x and y.
inline nlohmann::json to_json(const GrrCertificate& cert, const GroupTable& table, std::size_t x, std::size_t y) {
  nlohmann::json j;
  j["group_order"] = cert.group_order;
  j["k"] = cert.k;
  j["p"] = cert.p;
  j["checks"] = to_json(cert.checks);
  j["aut_gs_order"] = cert.aut_gs_order ? nlohmann::json(*cert.aut_gs_order) : nlohmann::json();
  j["verdict"] = to_string(cert.verdict);
  if (cert.witness) {
    j["witness"] = {{"x_image", table.element((*cert.witness)(x)).to_string()},
                    {"y_image", table.element((*cert.witness)(y)).to_string()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline nlohmann::json to_json(const GenerationEstimate& e) {
  return {{"successes", e.successes}, {"trials", e.trials}, {"estimate", e.value()}};
}

inline nlohmann::json make_report(const std::string& command, nlohmann::json inputs, nlohmann::json results,
                                  nlohmann::json timings) {
  return {{"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"timings", std::move(timings)},
          {"version", kVersion}};
}

}  // namespace grr
