#include "phqm/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "phqm/error.hpp"

namespace phqm::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Eigen::Index dimension(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw Error(ErrorKind::ParseError, std::string("matrix file needs an integer \"") + key + "\"");
    const auto v = doc[key].get<long long>();
    if (v < 1) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be positive");
    return static_cast<Eigen::Index>(v);
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& doc) {
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "matrix file must be a JSON object");
    const auto rows = dimension(doc, "rows");
    const auto cols = dimension(doc, "cols");
    if (!doc.contains("data") || !doc["data"].is_array())
        throw Error(ErrorKind::ParseError, "matrix file needs a \"data\" array");
    const auto& data = doc["data"];
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw Error(ErrorKind::ParseError, "data length " + std::to_string(data.size()) + " does not equal rows*cols");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& e = data[static_cast<std::size_t>(r * cols + c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw Error(ErrorKind::ParseError, "each entry must be a [re, im] pair of numbers");
            const Complex z(e[0].get<double>(), e[1].get<double>());
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
            m(r, c) = z;
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    Json doc;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    doc["data"] = std::move(data);
    return doc;
}

Json read_json(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::ParseError, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

ComplexMatrix read_matrix(const std::filesystem::path& path) {
    try {
        return matrix_from_json(read_json(path));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
        throw;
    }
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) { write_json(path, matrix_to_json(m)); }

ComplexVector read_state(const std::filesystem::path& path) {
    const ComplexMatrix m = read_matrix(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw Error(ErrorKind::DimensionMismatch, path.string() + ": state must have one row or one column");
}

std::string sha256_file(const std::filesystem::path& path) {
    const std::string bytes = slurp(path);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::InvalidArgument, "SHA-256 digest failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

}  // namespace phqm::io
