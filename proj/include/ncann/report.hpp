#pragma once

#include <string>

#include "json.hpp"

namespace ncann {

/// Structured outcome of one verified claim. `pass`/`fail` are constructive
/// verdicts; `evidence` marks bounded-scan results that are consistent at the
/// checked bounds without being a proof. Failures are always constructive
/// (they carry a witness).
struct CheckReport {
  enum class Verdict { pass, fail, evidence };

  std::string claim;
  Verdict verdict = Verdict::pass;
  nlohmann::json detail = nlohmann::json::object();

  bool ok() const { return verdict != Verdict::fail; }

  static const char* verdict_name(Verdict v) {
    switch (v) {
      case Verdict::pass: return "pass";
      case Verdict::fail: return "fail";
      case Verdict::evidence: return "evidence";
    }
    return "?";
  }

  nlohmann::json to_json() const {
    return nlohmann::json{{"claim", claim},
                          {"verdict", verdict_name(verdict)},
                          {"detail", detail}};
  }
};

}  // namespace ncann
