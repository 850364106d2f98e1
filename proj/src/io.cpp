#include "mpsvd/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

namespace mpsvd {

namespace {

template <typename T>
std::string shortest(T v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_value(const std::string& tok, index_t position) {
  T v{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw IoError("bad value '" + tok + "' at position " +
                  std::to_string(position));
  return v;
}

}  // namespace

std::string format_shortest(double v) { return shortest(v); }
std::string format_shortest(float v) { return shortest(v); }

void write_matrix(std::ostream& os, const DenseMatrix& a) {
  os << a.rows() << ' ' << a.cols() << ' ' << precision_tag(a.precision())
     << '\n';
  const index_t m = a.rows();
  for (index_t j = 0; j < a.cols(); ++j) {
    for (index_t i = 0; i < m; ++i) {
      if (a.precision() == Precision::Working)
        os << shortest(a.fptr()[static_cast<std::size_t>(j) * m + i]);
      else
        os << shortest(a.dptr()[static_cast<std::size_t>(j) * m + i]);
      os << (i + 1 == m ? '\n' : ' ');
    }
  }
}

void write_matrix_file(const std::string& path, const DenseMatrix& a) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_matrix(os, a);
  os.flush();
  if (!os) throw IoError("write failed for '" + path + "'");
}

DenseMatrix read_matrix(std::istream& is) {
  index_t m = 0, n = 0;
  std::string tag;
  if (!(is >> m >> n >> tag)) throw IoError("bad matrix header");
  if (m < 1 || n < 1) throw IoError("bad matrix dimensions in header");
  Precision prec;
  if (tag == "f32")
    prec = Precision::Working;
  else if (tag == "f64")
    prec = Precision::Higher;
  else
    throw IoError("unknown precision tag '" + tag + "'");

  DenseMatrix a(m, n, prec);
  std::string tok;
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i < m; ++i) {
      if (!(is >> tok))
        throw IoError("matrix body too short: expected " +
                      std::to_string(m * n) + " values");
      const index_t pos = j * m + i;
      if (prec == Precision::Working)
        a.fptr()[static_cast<std::size_t>(pos)] = parse_value<float>(tok, pos);
      else
        a.dptr()[static_cast<std::size_t>(pos)] = parse_value<double>(tok, pos);
    }
  }
  return a;
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_matrix(is);
}

}  // namespace mpsvd
