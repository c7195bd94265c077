#ifndef OPDKIT_TEXTIO_HPP
#define OPDKIT_TEXTIO_HPP

#include <optional>
#include <string>

#include "opdkit/fincat.hpp"
#include "opdkit/operad.hpp"
#include "opdkit/smc.hpp"

namespace opdkit::io {

// Lexical or grammatical failure, with position information.
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// The file parses and resolves but breaks the structure's axioms.
struct validation_error : std::runtime_error {
  json report;
  explicit validation_error(json r)
      : std::runtime_error("validation failed: " + r.dump()), report(std::move(r)) {}
};

struct Model {
  enum class Kind { category, operad, smc, pinned, substitude };
  Kind kind = Kind::category;
  std::string name;

  cat::CatPtr category;                         // category / pinned / substitude
  opd::OpdPtr operad;                           // operad / substitude
  smc::SmcPtr smc;                              // smc / pinned
  std::optional<smc::PinnedSMC> pinned;         // pinned
  std::optional<opd::PinnedOperad> substitude;  // substitude (pins may be a subset)
};

// Parses, resolves all references and validates; the three failure classes
// are parse_error, input_error (dangling identifiers / typing) and
// validation_error (axioms).
Model parse_model(const std::string& text);

// Canonical printer; parse o print is the identity on canonically printed
// files.
std::string print_model(const Model& m);

Model model_of_category(const cat::CatPtr& c, std::string name);
Model model_of_operad(const opd::OpdPtr& p, std::string name);
Model model_of_smc(const smc::SmcPtr& m, std::string name);
Model model_of_pinned(const smc::PinnedSMC& p, std::string name);
Model model_of_substitude(const opd::PinnedOperad& s, std::string name);

}  // namespace opdkit::io

#endif
