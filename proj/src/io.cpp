#include "alphavb/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace alphavb::io {

std::string render_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

double parse_cell(const std::string& cell) {
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw std::invalid_argument("malformed csv");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, ',')) cells.push_back(cur);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::vector<double>> read_rows(const std::string& path, size_t* ncols) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("unreadable file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("malformed csv");
  *ncols = split(line).size(); // header defines the width

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cells = split(line);
    if (cells.size() != *ncols) throw std::invalid_argument("shape");
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) row[i] = parse_cell(cells[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

void write_matrix_csv(const std::string& path, const MatrixXd& m,
                      const std::string& col_prefix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  for (int j = 0; j < m.cols(); ++j) {
    if (j) out << ',';
    out << col_prefix << j;
  }
  out << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << render_double(m(i, j));
    }
    out << '\n';
  }
}

void write_vector_csv(const std::string& path, const VectorXd& v,
                      const std::string& name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << name << '\n';
  for (int i = 0; i < v.size(); ++i) out << render_double(v(i)) << '\n';
}

MatrixXd read_matrix_csv(const std::string& path) {
  size_t ncols = 0;
  auto rows = read_rows(path, &ncols);
  MatrixXd m(static_cast<long>(rows.size()), static_cast<long>(ncols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) m(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
  return m;
}

VectorXd read_vector_csv(const std::string& path) {
  size_t ncols = 0;
  auto rows = read_rows(path, &ncols);
  if (ncols != 1) throw std::invalid_argument("shape");
  VectorXd v(static_cast<long>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) v(static_cast<long>(i)) = rows[i][0];
  return v;
}

} // namespace alphavb::io
