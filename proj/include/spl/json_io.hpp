#pragma once

#include <string>

#include "spl/measure.hpp"
#include "spl/poly.hpp"

namespace spl {

/// Parse {"components":[...]} with component objects
///   {"type":"atoms","points":[{"re":..,"im":..,"mass":..}]}
///   {"type":"uniform_circle","radius":..,"mass":..}
///   {"type":"extremal_tail","alpha":..}            (optional "mass_scale")
///   {"type":"tabulated","r_grid":[..],"theta_grid":[..],"values":[[..]]}
/// Parsing is strict: unknown keys raise std::invalid_argument.
Measure measure_from_json(const std::string& text);

std::string measure_to_json(const Measure& m);

/// Parse {"coefficients":[c0,...,cd]}; strict about keys.
PositivePolynomial polynomial_from_json(const std::string& text);

/// Parse inline "c0,c1,...,cd".
PositivePolynomial polynomial_from_csv(const std::string& csv);

}  // namespace spl
