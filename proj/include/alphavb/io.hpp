#pragma once

#include "alphavb/model.hpp"

#include <string>
#include <vector>

namespace alphavb::io {

// Shortest decimal that round-trips to the same double (std::to_chars).
std::string render_double(double x);

// CSV with a header row, LF endings. Readers throw std::invalid_argument on
// missing files, ragged rows or unparsable cells.
void write_matrix_csv(const std::string& path, const MatrixXd& m,
                      const std::string& col_prefix);
void write_vector_csv(const std::string& path, const VectorXd& v,
                      const std::string& name);
MatrixXd read_matrix_csv(const std::string& path);
VectorXd read_vector_csv(const std::string& path);

} // namespace alphavb::io
