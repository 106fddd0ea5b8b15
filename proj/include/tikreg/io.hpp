#pragma once

#include <string>

#include "tikreg/types.hpp"

namespace tikreg {

// Shortest decimal form that parses back to the same double, capped at nine
// significant digits; emitted everywhere a float reaches an output file so
// reruns diff byte-for-byte.
std::string fmt_g9(double x);

void write_matrix_market(const std::string& path, const Matrix& a);
Matrix read_matrix_market(const std::string& path);

// Headered CSV: matrices carry a "c0,c1,..." header row, vectors a single
// "value" header.
void write_matrix_csv(const std::string& path, const Matrix& a);
Matrix read_matrix_csv(const std::string& path);
void write_vector_csv(const std::string& path, const Vector& v, const std::string& header = "value");
Vector read_vector_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace tikreg
