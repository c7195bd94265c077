#ifndef OPDKIT_REPORT_HPP
#define OPDKIT_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace opdkit {

using json = nlohmann::json;

// Malformed or dangling input data.  Distinct from an axiom failure,
// which is reported through a CheckReport verdict.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Disagreement between two theorem-equivalent criteria.  This is an
// implementation bug, never a property of the input (CLI exit code 3).
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Enumeration budget exceeded (OPDKIT_MAX_ENUM).
struct enum_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-hom enumeration cap.  Defaults to 10^6, overridable through the
// OPDKIT_MAX_ENUM environment variable.
std::uint64_t max_enum();
void check_enum_budget(std::uint64_t size, const std::string& what);

struct Coverage {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;

  Coverage& operator+=(const Coverage& o) {
    checked += o.checked;
    skipped += o.skipped;
    return *this;
  }
};

// Outcome of a decision procedure: verdict, bound used, coverage of
// axiom instances, and a structured witness on failure.
struct CheckReport {
  std::string check;
  bool verdict = true;
  int bound = 0;
  Coverage coverage;
  json witness;  // null when verdict is true

  static CheckReport pass(std::string name, int bound) {
    CheckReport r;
    r.check = std::move(name);
    r.bound = bound;
    return r;
  }

  static CheckReport fail(std::string name, int bound, json witness) {
    CheckReport r;
    r.check = std::move(name);
    r.bound = bound;
    r.verdict = false;
    r.witness = std::move(witness);
    return r;
  }

  // Fold a sub-check into this one, keeping the first failure witness.
  void absorb(const CheckReport& sub) {
    coverage += sub.coverage;
    if (!sub.verdict && verdict) {
      verdict = false;
      witness = json{{"check", sub.check}, {"witness", sub.witness}};
    }
  }

  json to_json() const {
    return json{{"check", check},
                {"verdict", verdict},
                {"bound", bound},
                {"coverage", json{{"checked", coverage.checked}, {"skipped", coverage.skipped}}},
                {"witness", verdict ? json(nullptr) : witness}};
  }
};

}  // namespace opdkit

#endif
