#pragma once

#include <iosfwd>
#include <string>

#include "sod/matcore.hpp"

namespace sod {

// Binary CSC container, little-endian:
//   magic "CSCM", version u16, rows u32, cols u32, nnz u64,
//   value_bits u8, index_bits u8, pointer_bits u8, reserved u8,
//   then col_pointers, row_indices, values as packed bit arrays at their
//   declared widths, each array padded to a byte boundary.
inline constexpr char kCscMagic[4] = {'C', 'S', 'C', 'M'};
inline constexpr uint16_t kCscVersion = 1;

void write_csc(std::ostream& os, const CscMatrix& c, const BitWidths& bw);
CscMatrix read_csc(std::istream& is, BitWidths* bw_out = nullptr);

void write_csc_file(const std::string& path, const CscMatrix& c, const BitWidths& bw);
CscMatrix read_csc_file(const std::string& path, BitWidths* bw_out = nullptr);

// Plain text dense dump: "rows cols\n" then one line per row of
// space-separated integers. Canonical formatting, so a decode of an
// encode reproduces the input bytes exactly.
void write_dense_text(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_dense_text(std::istream& is);

void write_dense_text_file(const std::string& path, const DenseMatrix& m);
DenseMatrix read_dense_text_file(const std::string& path);

}  // namespace sod
