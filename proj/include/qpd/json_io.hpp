#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpd/matrix.hpp"

namespace qpd {

using Json = nlohmann::ordered_json;

// Malformed input document: bad JSON, wrong shapes, non-numeric entries.
class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// { "n": N, "matrix": [[[re,im],...]...], "factor_order"?: [...], "dims"?: [...] }
struct InputDocument {
    std::int64_t n = 0;
    ComplexMatrix matrix;
    std::optional<std::vector<std::int64_t>> factor_order;
    std::optional<std::vector<std::int64_t>> dims;
};

Json complex_to_json(const Complex& z);
Json matrix_to_json(const ComplexMatrix& m);

// Throws ParseError naming the offending row/column on shape errors.
ComplexMatrix matrix_from_json(const Json& j);

InputDocument parse_input(const std::string& text);

}  // namespace qpd
