// Matrix text format.
//
//   line 1:  m n precision-tag        (tag is "f32" or "f64")
//   then:    m*n whitespace-separated values, column-major order
//
// Values are printed with the shortest decimal representation that round-trips
// to the identical bit pattern, so write followed by read is bit-exact.

#pragma once

#include <iosfwd>
#include <string>

#include "mpsvd/types.hpp"

namespace mpsvd {

void write_matrix(std::ostream& os, const DenseMatrix& a);
void write_matrix_file(const std::string& path, const DenseMatrix& a);

DenseMatrix read_matrix(std::istream& is);
DenseMatrix read_matrix_file(const std::string& path);

// Shortest round-trip decimal for one value, used by the writers and by CSV
// output so that numbers survive a parse cycle bit-exactly.
std::string format_shortest(double v);
std::string format_shortest(float v);

}  // namespace mpsvd
