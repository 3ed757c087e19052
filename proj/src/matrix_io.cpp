#include "qmi/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace qmi::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error("matrix json: expected object with rows, cols, data");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& data = j.at("data");
    if (!data.is_array() || data.size() != rows * cols)
        throw Error("matrix json: data length must equal rows*cols");
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& e : data) {
        if (!e.is_array() || e.size() != 2)
            throw Error("matrix json: each entry must be a [re, im] pair");
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix read_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("cannot parse matrix file " + path + ": " + e.what());
    }
    return matrix_from_json(j);
}

void write_matrix_json(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open output file: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

ComplexMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open matrix file: " + path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0)
        throw Error("not a Matrix Market file: " + path);
    std::istringstream hs(header);
    std::string tag, object, format, field, symmetry;
    hs >> tag >> object >> format >> field >> symmetry;
    if (object != "matrix" || field != "real" || symmetry != "general")
        throw Error("only real general Matrix Market matrices are supported");

    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '%')
            break;
    std::istringstream sizes(line);

    if (format == "array") {
        std::size_t rows = 0, cols = 0;
        sizes >> rows >> cols;
        if (rows == 0 || cols == 0)
            throw Error("bad Matrix Market size line");
        ComplexMatrix m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) {
                double v;
                if (!(in >> v))
                    throw Error("truncated Matrix Market array data");
                m(i, j) = v;
            }
        return m;
    }
    if (format == "coordinate") {
        std::size_t rows = 0, cols = 0, nnz = 0;
        sizes >> rows >> cols >> nnz;
        if (rows == 0 || cols == 0)
            throw Error("bad Matrix Market size line");
        ComplexMatrix m(rows, cols);
        for (std::size_t k = 0; k < nnz; ++k) {
            std::size_t i, j;
            double v;
            if (!(in >> i >> j >> v))
                throw Error("truncated Matrix Market coordinate data");
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw Error("Matrix Market index out of range");
            m(i - 1, j - 1) = v;
        }
        return m;
    }
    throw Error("unsupported Matrix Market format: " + format);
}

json certificate_to_json(const inclusions::InclusionCertificate& cert, bool member) {
    json j;
    j["kind"] = cert.kind.name();
    if (cert.kind.is_hyper() && !cert.kind.eta().is_infinite())
        j["eta"] = cert.kind.eta().value();
    else
        j["eta"] = "inf";
    j["base"] = matrix_to_json(cert.base);
    j["slack"] = matrix_to_json(cert.slack);
    j["min_eig_slack"] = cert.min_eig_slack;
    j["strict"] = cert.strict;
    j["member"] = member;
    return j;
}

json sign_result_to_json(const msf::SignResult& r) {
    return json{{"sign", matrix_to_json(r.sign)},
                {"iterations", r.iterations},
                {"residual_history", r.residual_history},
                {"converged", r.converged}};
}

} // namespace qmi::io
