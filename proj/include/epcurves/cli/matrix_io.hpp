#pragma once

// Matrix files: plain text ("d" then d rows of d integers) or JSON
// {"dim": d, "rows": [[...], ...]}.

#include <fstream>
#include <sstream>
#include <string>

#include "epcurves/exactmath.hpp"
#include "json.hpp"

namespace epc::cli {

namespace detail {

inline bool parse_integer(const std::string& tok, Integer& out) {
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) return false;
    for (std::size_t j = i; j < tok.size(); ++j)
        if (tok[j] < '0' || tok[j] > '9') return false;
    out = Integer(tok[0] == '+' ? tok.substr(1) : tok);
    return true;
}

inline std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

inline IntMatrix parse_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0, dim = 0, row = 0;
    bool have_dim = false;
    IntMatrix m;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (!have_dim) {
            Integer d;
            if (toks.size() != 1 || !parse_integer(toks[0], d) || d < 1 || d > 10000)
                throw InputError(where(source, lineno) + "expected a positive dimension on the first line");
            dim = d.convert_to<std::size_t>();
            m = IntMatrix(dim, dim);
            have_dim = true;
            continue;
        }
        if (row == dim) throw InputError(where(source, lineno) + "more than " + std::to_string(dim) + " rows");
        if (toks.size() != dim)
            throw InputError(where(source, lineno) + "ragged row: expected " + std::to_string(dim) + " entries, found " +
                             std::to_string(toks.size()));
        for (std::size_t j = 0; j < dim; ++j)
            if (!parse_integer(toks[j], m(row, j)))
                throw InputError(where(source, lineno) + "not an integer: '" + toks[j] + "'");
        ++row;
    }
    if (!have_dim) throw InputError(source + ": empty matrix file");
    if (row != dim)
        throw InputError(where(source, lineno) + "expected " + std::to_string(dim) + " rows, found " + std::to_string(row));
    return m;
}

inline Integer json_integer(const nlohmann::json& v, const std::string& ctx) {
    if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long long>()) : Integer(v.get<long long>());
    Integer out;
    if (v.is_string() && !v.get<std::string>().empty() && parse_integer(v.get<std::string>(), out)) return out;
    throw InputError(ctx + ": not an integer: " + v.dump());
}

inline IntMatrix parse_json(const std::string& text, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(source + ": malformed JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows") || !j["rows"].is_array())
        throw InputError(source + ": expected an object with \"dim\" and \"rows\"");
    const Integer d = json_integer(j["dim"], source + ": dim");
    if (d < 1 || d > 10000) throw InputError(source + ": dim out of range");
    const std::size_t dim = d.convert_to<std::size_t>();
    const auto& rows = j["rows"];
    if (rows.size() != dim)
        throw InputError(source + ": expected " + std::to_string(dim) + " rows, found " + std::to_string(rows.size()));
    IntMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::string ctx = source + ": row " + std::to_string(i + 1);
        if (!rows[i].is_array() || rows[i].size() != dim)
            throw InputError(ctx + ": ragged row, expected " + std::to_string(dim) + " entries");
        for (std::size_t k = 0; k < dim; ++k) m(i, k) = json_integer(rows[i][k], ctx);
    }
    return m;
}

}  // namespace detail

inline IntMatrix parse_matrix(const std::string& text, const std::string& source = "<input>") {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return detail::parse_json(text, source);
    return detail::parse_text(text, source);
}

inline IntMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str(), path);
}

inline std::string format_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
    return os.str();
}

inline void write_matrix_file(const IntMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << format_matrix(m);
}

}  // namespace epc::cli
