#pragma once

#include "qmms/weights.hpp"

#include <memory>
#include <string>

namespace qmms {

// JSON document for a weighting:
//   {"n": 4, "q": 2, "modulus": [...], "weights": [["num","den"], ...]}
// weights are indexed by point id, each a numerator/denominator string pair in
// lowest terms; "modulus" appears only for extension fields.
std::string weighting_to_json(const WeightFunction& f);

// Parses and validates a weighting document, building the geometry it
// describes. Malformed documents raise std::invalid_argument with line/column
// positions for syntax errors and element indices for value errors; a nonzero
// total raises SumZeroError with the exact residual.
struct LoadedWeighting {
    std::shared_ptr<GeometryContext> context;
    WeightFunction f;
};
LoadedWeighting weighting_from_json(const std::string& text);

}  // namespace qmms
