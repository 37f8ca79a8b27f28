#include "synalg/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "synalg/error.hpp"

namespace synalg {
namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_matrix(std::ostream& out, const ModelShape& shape, const Matrix& m) {
  out << "shape";
  for (int n : shape.blocks()) out << ' ' << n;
  out << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_element(std::ostream& out, const Element& a) { write_matrix(out, a.shape(), a.data()); }

std::string format_element(const Element& a) {
  std::ostringstream out;
  write_element(out, a);
  return out.str();
}

Element read_element(std::istream& in, const Tolerances& tol) {
  std::string line;
  if (!next_content_line(in, line)) throw Error(ErrorKind::kParse, "missing shape header");
  std::istringstream header(line);
  std::string keyword;
  header >> keyword;
  if (keyword != "shape") throw Error(ErrorKind::kParse, "expected 'shape', got '" + keyword + "'");
  std::vector<int> blocks;
  int n = 0;
  while (header >> n) blocks.push_back(n);
  if (!header.eof()) throw Error(ErrorKind::kParse, "bad block size in '" + line + "'");
  ModelShape shape(std::move(blocks));

  const int dim = shape.dim();
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (!next_content_line(in, line)) {
      throw Error(ErrorKind::kParse, "expected " + std::to_string(dim) + " rows, got " +
                                         std::to_string(i));
    }
    std::istringstream row(line);
    for (int j = 0; j < dim; ++j) {
      std::string token;
      if (!(row >> token)) {
        throw Error(ErrorKind::kParse, "row " + std::to_string(i) + " is too short");
      }
      try {
        std::size_t used = 0;
        m(i, j) = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParse, "bad number '" + token + "'");
      }
    }
    std::string extra;
    if (row >> extra) throw Error(ErrorKind::kParse, "row " + std::to_string(i) + " is too long");
  }
  if (next_content_line(in, line)) throw Error(ErrorKind::kParse, "trailing data: " + line);
  return Element(shape, m, tol);
}

Element parse_element(const std::string& text, const Tolerances& tol) {
  std::istringstream in(text);
  return read_element(in, tol);
}

Element load_element(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return read_element(in, tol);
}

Projection load_projection(const std::string& path, const Tolerances& tol) {
  return Projection::from(load_element(path, tol), tol);
}

Symmetry load_symmetry(const std::string& path, const Tolerances& tol) {
  return Symmetry::from(load_element(path, tol), tol);
}

void save_element(const std::string& path, const Element& a) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  write_element(out, a);
}

}  // namespace synalg
