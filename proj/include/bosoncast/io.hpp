#pragma once

// Number formatting and JSON encodings shared by the CLI and the tests.

#include <string>
#include <string_view>

#include "json.hpp"

#include "bosoncast/coherent_quadrature.hpp"
#include "bosoncast/conjecture.hpp"
#include "bosoncast/gaussian.hpp"
#include "bosoncast/gaussian_search.hpp"

namespace bosoncast {

using Json = nlohmann::ordered_json;

/// Locale-independent "%.12g"-style rendering via std::to_chars. Negative zero
/// prints as "0".
std::string format_number(double x);

/// Strict parse of a complete decimal/exponent string; throws ValidationError.
double parse_number(std::string_view text);

/// Round to 12 significant digits, for JSON scalars in reports.
double rounded(double x);

Json to_json(const GaussianState& state);
GaussianState gaussian_state_from_json(const Json& doc);

Json to_json(const ComplexMatrix<double>& m);
Json to_json(const SymplecticDecomposition& dec);
Json to_json(const GaussianSearchReport& report);
Json to_json(const SearchReport& report);
Json to_json(const LocalCheckReport& report);
Json to_json(const CoherentRegionResult& result);

}  // namespace bosoncast
