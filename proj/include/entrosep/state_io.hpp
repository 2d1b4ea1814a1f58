#pragma once

// Density-matrix text format:
//   dims: d1 d2 ... dk
//   i j re im        (0-based row-major indices, one nonzero entry per line)
// Blank lines and lines starting with '#' are skipped. The parser validates
// the DensityMatrix invariants on load.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "entrosep/states.hpp"

namespace entrosep {

inline DensityMatrix read_density(std::istream& in) {
  std::string line;
  long line_no = 0;

  const auto next_content_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header)) throw ParseError("empty input, expected a dims: line");
  {
    std::istringstream iss(header);
    std::string tag;
    iss >> tag;
    if (tag != "dims:") throw ParseError("expected 'dims: d1 d2 ...'", line_no);
    std::vector<std::size_t> dims;
    long long d = 0;
    while (iss >> d) {
      if (d < 2) throw ParseError("subsystem dimensions must be >= 2", line_no);
      dims.push_back(static_cast<std::size_t>(d));
    }
    if (!iss.eof()) throw ParseError("malformed dims entry", line_no);
    if (dims.empty()) throw ParseError("dims line lists no subsystems", line_no);

    const std::size_t dim = detail::product_of(dims);
    ComplexMatrix m(dim, dim);
    std::vector<bool> seen(dim * dim, false);
    std::string entry;
    while (next_content_line(entry)) {
      std::istringstream es(entry);
      long long i = 0, j = 0;
      double re = 0.0, im = 0.0;
      if (!(es >> i >> j >> re >> im)) throw ParseError("expected 'i j re im'", line_no);
      std::string rest;
      if (es >> rest) throw ParseError("trailing content after entry", line_no);
      if (i < 0 || j < 0 || i >= static_cast<long long>(dim) || j >= static_cast<long long>(dim))
        throw ParseError("entry index out of range", line_no);
      const std::size_t flat = static_cast<std::size_t>(i) * dim + static_cast<std::size_t>(j);
      if (seen[flat]) throw ParseError("duplicate entry", line_no);
      seen[flat] = true;
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Complex{re, im};
    }

    try {
      return validated_density(std::move(m), std::move(dims));
    } catch (const Error& e) {
      throw ParseError(std::string("density validation failed: ") + e.what());
    }
  }
}

inline DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_density(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_density(std::ostream& out, const DensityMatrix& rho) {
  out << "dims:";
  for (std::size_t d : rho.dims) out << ' ' << d;
  out << '\n';
  char buf[128];
  for (std::size_t i = 0; i < rho.dimension(); ++i)
    for (std::size_t j = 0; j < rho.dimension(); ++j) {
      const Complex z = rho.matrix(i, j);
      if (z == Complex{0.0, 0.0}) continue;
      std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g", i, j, z.real(), z.imag());
      out << buf << '\n';
    }
}

inline void write_density_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_density(out, rho);
}

}  // namespace entrosep
