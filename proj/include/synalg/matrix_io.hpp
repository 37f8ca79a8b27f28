#pragma once

#include <iosfwd>
#include <string>

#include "synalg/element.hpp"
#include "synalg/projection.hpp"

namespace synalg {

// Plain-text matrix format:
//   shape 2 3
//   <5 rows of 5 decimal floats>
// Blank lines and lines starting with '#' are ignored. Values are written
// with 17 significant digits so that doubles round-trip exactly.

void write_element(std::ostream& out, const Element& a);
std::string format_element(const Element& a);
void write_matrix(std::ostream& out, const ModelShape& shape, const Matrix& m);

Element read_element(std::istream& in, const Tolerances& tol = {});
Element parse_element(const std::string& text, const Tolerances& tol = {});

Element load_element(const std::string& path, const Tolerances& tol = {});
Projection load_projection(const std::string& path, const Tolerances& tol = {});
Symmetry load_symmetry(const std::string& path, const Tolerances& tol = {});
void save_element(const std::string& path, const Element& a);

}  // namespace synalg
