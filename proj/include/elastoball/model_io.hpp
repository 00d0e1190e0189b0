#pragma once

#include <optional>
#include <string>

#include "elastoball/model.hpp"

namespace elastoball {

/// Parsed model definition file: Lame parameters plus either a builtin name
/// or an explicit stored-energy table. Unknown keys are rejected.
struct ModelDefinition {
    LameParameters lame;
    std::optional<BuiltinKind> builtin;
    std::optional<PowerLawSpec> spec;

    /// Builds the evaluable model. For explicit specs the coefficient
    /// conditions are only enforced when require_conditions is set; the
    /// validate pipeline loads leniently and reports failures instead.
    ConstitutiveModel instantiate(bool require_conditions = false) const;
};

/// Grammar: `key = value` lines, `#` comments, nested arrays/tables for
///   groups = [ { gamma = "p/q", terms = [ { alpha = 1.0, beta = "p/q" } ] } ]
/// plus scalar keys lambda, mu, kappa_ref, w0, builtin.
ModelDefinition parse_model_definition(const std::string& text);
ModelDefinition load_model_definition(const std::string& path);

}  // namespace elastoball
