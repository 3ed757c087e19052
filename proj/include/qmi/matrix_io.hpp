#pragma once

#include <string>

#include <json.hpp>

#include "qmi/inclusions.hpp"
#include "qmi/matrix.hpp"
#include "qmi/msf.hpp"

namespace qmi::io {

/// Matrix exchange format:
///   {"rows": n, "cols": m, "data": [[re, im], ...]}  (row-major)
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix read_matrix_json(const std::string& path);
void write_matrix_json(const std::string& path, const ComplexMatrix& m);

/// Real Matrix Market files (array or coordinate, general), as a
/// convenience import path.
ComplexMatrix read_matrix_market(const std::string& path);

nlohmann::json certificate_to_json(const inclusions::InclusionCertificate& cert, bool member);
nlohmann::json sign_result_to_json(const msf::SignResult& r);

} // namespace qmi::io
