#include "qpd/json_io.hpp"

namespace qpd {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("matrix: expected a non-empty array of rows");
    const std::size_t n = j.size();
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = j[r];
        if (!row.is_array())
            throw ParseError("matrix: row " + std::to_string(r) + " is not an array");
        if (row.size() != n)
            throw ParseError("matrix: row " + std::to_string(r) + " has " +
                             std::to_string(row.size()) + " entries, expected " +
                             std::to_string(n) + " (ragged at row " + std::to_string(r) +
                             ", column " + std::to_string(std::min(row.size(), n)) + ")");
        for (std::size_t c = 0; c < n; ++c) {
            const Json& e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError("matrix: entry at row " + std::to_string(r) + ", column " +
                                 std::to_string(c) + " is not a [re, im] pair");
            m(r, c) = Complex{e[0].get<double>(), e[1].get<double>()};
        }
    }
    return m;
}

InputDocument parse_input(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("input document must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw ParseError("input document: missing integer field \"n\"");
    if (!doc.contains("matrix"))
        throw ParseError("input document: missing field \"matrix\"");

    InputDocument in;
    in.n = doc["n"].get<std::int64_t>();
    if (in.n < 1) throw ParseError("input document: \"n\" must be positive");
    in.matrix = matrix_from_json(doc["matrix"]);
    if (in.matrix.rows() != in.n)
        throw ParseError("input document: matrix is " + std::to_string(in.matrix.rows()) +
                         "x" + std::to_string(in.matrix.cols()) + " but n = " +
                         std::to_string(in.n));

    auto int_list = [](const Json& j, const char* name) {
        if (!j.is_array()) throw ParseError(std::string("input document: \"") + name +
                                            "\" must be an array of integers");
        std::vector<std::int64_t> out;
        for (const auto& e : j) {
            if (!e.is_number_integer())
                throw ParseError(std::string("input document: \"") + name +
                                 "\" must be an array of integers");
            out.push_back(e.get<std::int64_t>());
        }
        return out;
    };
    if (doc.contains("factor_order")) in.factor_order = int_list(doc["factor_order"], "factor_order");
    if (doc.contains("dims")) in.dims = int_list(doc["dims"], "dims");
    return in;
}

}  // namespace qpd
