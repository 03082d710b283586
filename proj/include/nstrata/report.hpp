#pragma once

// JSON serialization of certificates and query reports.

#include <optional>
#include <string>

#include <json.hpp>

#include "nstrata/certificate.hpp"
#include "nstrata/literal.hpp"

namespace nstrata {

inline nlohmann::json to_json(const PermutationWitness& w) {
  nlohmann::json slopes = nlohmann::json::array(), tags = nlohmann::json::array();
  for (const auto& s : w.polygon.slopes()) slopes.push_back(s.to_string());
  for (auto t : w.tags) tags.push_back(to_string(t));
  return {{"polygon", slopes}, {"tags", tags}};
}

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j{{"kind", to_string(c.kind)},
                   {"E", render_polygon(c.source)},
                   {"E_prime", render_polygon(c.target)},
                   {"degree", c.degree}};
  switch (c.kind) {
    case Certificate::Kind::identity:
      break;
    case Certificate::Kind::basic:
      j["bruhat"] = c.bruhat_holds;
      j["sandwich"] = c.sandwich_holds;
      break;
    case Certificate::Kind::inductive: {
      j["top"] = render_polygon(c.top);
      j["rest"] = render_polygon(c.rest);
      j["top_modified"] = render_polygon(c.top_modified);
      j["rest_modified"] = render_polygon(c.rest_modified);
      nlohmann::json chain = nlohmann::json::array(), steps = nlohmann::json::array();
      for (const auto& p : c.extension.chain) chain.push_back(render_polygon(p));
      for (const auto& s : c.extension.steps) steps.push_back(to_json(s));
      j["extension"] = {{"chain", chain}, {"steps", steps}};
      if (c.sub) j["sub"] = to_json(*c.sub);
      break;
    }
  }
  return j;
}

struct QueryReport {
  bool decision = false;
  CertificatePtr certificate;
  std::string b;
  std::string mu;
  std::string b_prime;
  std::string engine;
  double ms = 0.0;
};

inline nlohmann::json to_json(const QueryReport& r) {
  nlohmann::json j{{"decision", r.decision}, {"b", r.b},           {"mu", r.mu},
                   {"b_prime", r.b_prime},   {"engine", r.engine}, {"ms", r.ms}};
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

}  // namespace nstrata
