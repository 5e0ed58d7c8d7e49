#include "sod/matcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace sod {

void validate(const BitWidths& bw, int64_t max_contraction_length) {
    if (bw.value_bits <= 0 || bw.index_bits <= 0 || bw.pointer_bits <= 0 || bw.psum_bits <= 0) {
        throw Error("bit widths must be positive");
    }
    if (bw.value_bits > 31) throw Error("value_bits > 31 unsupported");
    if (max_contraction_length > 1) {
        int need = 2 * bw.value_bits +
                   int(std::ceil(std::log2(double(max_contraction_length))));
        if (bw.psum_bits < need) {
            throw Error("psum_bits " + std::to_string(bw.psum_bits) +
                        " too narrow for contraction length " +
                        std::to_string(max_contraction_length));
        }
    }
}

void validate_structure(const CscMatrix& c) {
    if (c.rows <= 0 || c.cols <= 0) throw MalformedCsc("non-positive dims");
    if (c.col_pointers.size() != size_t(c.cols) + 1) {
        throw MalformedCsc("col_pointers size != cols+1");
    }
    if (c.col_pointers.front() != 0) throw MalformedCsc("col_pointers[0] != 0");
    if (c.col_pointers.back() != c.values.size() ||
        c.values.size() != c.row_indices.size()) {
        throw MalformedCsc("pointer/value/index lengths disagree");
    }
    for (int col = 0; col < c.cols; ++col) {
        uint64_t begin = c.col_pointers[col];
        uint64_t end = c.col_pointers[col + 1];
        if (end < begin) throw MalformedCsc("col_pointers decrease at column " + std::to_string(col));
        for (uint64_t i = begin; i < end; ++i) {
            if (c.row_indices[i] >= uint32_t(c.rows)) {
                throw MalformedCsc("row index out of range in column " + std::to_string(col));
            }
            if (i > begin && c.row_indices[i] <= c.row_indices[i - 1]) {
                throw MalformedCsc("row indices not strictly increasing in column " +
                                   std::to_string(col));
            }
            if (c.values[i] == 0) throw MalformedCsc("stored zero value");
        }
    }
}

void validate(const CscMatrix& c, const BitWidths& bw) {
    validate_structure(c);
    if (c.rows > bw.max_rows()) {
        throw MalformedCsc("rows " + std::to_string(c.rows) + " not representable in " +
                           std::to_string(bw.index_bits) + "-bit indices");
    }
    const int64_t lim = int64_t(1) << (bw.value_bits - 1);
    for (int32_t v : c.values) {
        if (v >= lim || v < -lim) {
            throw MalformedCsc("value " + std::to_string(v) + " exceeds " +
                               std::to_string(bw.value_bits) + " signed bits");
        }
    }
}

CscMatrix csc_encode(const DenseMatrix& m, const BitWidths& bw) {
    if (m.rows <= 0 || m.cols <= 0 || m.data.size() != size_t(m.rows) * m.cols) {
        throw Error("invalid dense matrix");
    }
    if (m.rows > bw.max_rows()) {
        throw RowIndexOverflow("rows " + std::to_string(m.rows) + " exceed " +
                               std::to_string(bw.index_bits) + "-bit row index range");
    }
    const int64_t lim = int64_t(1) << (bw.value_bits - 1);
    CscMatrix c;
    c.rows = m.rows;
    c.cols = m.cols;
    c.col_pointers.resize(size_t(m.cols) + 1, 0);
    for (int col = 0; col < m.cols; ++col) {
        for (int row = 0; row < m.rows; ++row) {
            int32_t v = m.at(row, col);
            if (v >= lim || v < -lim) {
                throw Error("element " + std::to_string(v) + " exceeds " +
                            std::to_string(bw.value_bits) + " signed bits");
            }
            if (v != 0) {
                c.values.push_back(v);
                c.row_indices.push_back(uint32_t(row));
            }
        }
        c.col_pointers[size_t(col) + 1] = c.values.size();
    }
    return c;
}

DenseMatrix csc_decode(const CscMatrix& c) {
    validate_structure(c);
    DenseMatrix m;
    m.rows = c.rows;
    m.cols = c.cols;
    m.data.assign(size_t(c.rows) * c.cols, 0);
    for (int col = 0; col < c.cols; ++col) {
        for (uint64_t i = c.col_pointers[col]; i < c.col_pointers[size_t(col) + 1]; ++i) {
            m.at(int(c.row_indices[i]), col) = c.values[i];
        }
    }
    return m;
}

uint64_t footprint_bits(int64_t rows, int64_t cols, uint64_t nnz, MatrixFormat format,
                        const BitWidths& bw) {
    if (format == MatrixFormat::kDense) {
        return uint64_t(rows) * uint64_t(cols) * uint64_t(bw.value_bits);
    }
    return nnz * uint64_t(bw.value_bits + bw.index_bits) +
           uint64_t(cols + 1) * uint64_t(bw.pointer_bits);
}

uint64_t footprint_bits(const DenseMatrix& m, MatrixFormat format, const BitWidths& bw) {
    return footprint_bits(m.rows, m.cols, count_nonzeros(m), format, bw);
}

std::vector<TilePlanEntry> tile_grid(int rows, int cols, int tile_rows, int tile_cols) {
    if (tile_rows <= 0 || tile_cols <= 0) throw Error("tile dims must be positive");
    std::vector<TilePlanEntry> out;
    for (int r = 0; r < rows; r += tile_rows) {
        for (int c = 0; c < cols; c += tile_cols) {
            out.push_back({r, c, std::min(tile_rows, rows - r), std::min(tile_cols, cols - c)});
        }
    }
    return out;
}

DenseMatrix extract_tile(const DenseMatrix& m, const TilePlanEntry& t) {
    DenseMatrix out;
    out.rows = t.tile_rows;
    out.cols = t.tile_cols;
    out.data.resize(size_t(t.tile_rows) * t.tile_cols);
    for (int r = 0; r < t.tile_rows; ++r) {
        for (int c = 0; c < t.tile_cols; ++c) {
            out.at(r, c) = m.at(t.row_offset + r, t.col_offset + c);
        }
    }
    return out;
}

uint64_t count_nonzeros(const DenseMatrix& m) {
    return uint64_t(std::count_if(m.data.begin(), m.data.end(),
                                  [](int32_t v) { return v != 0; }));
}

uint64_t SplitMix64::next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return double(next() >> 11) * 0x1.0p-53;
}

uint64_t derive_seed(uint64_t base, uint64_t tag0, uint64_t tag1, uint64_t tag2) {
    SplitMix64 mix(base ^ 0x51afd54ed5c2cf2bull);
    uint64_t s = mix.next();
    for (uint64_t tag : {tag0, tag1, tag2}) {
        SplitMix64 step(s ^ tag);
        s = step.next();
    }
    return s;
}

namespace detail {

int32_t nonzero_value_from_bits(uint64_t bits, int value_bits) {
    // Uniform over the 2^value_bits - 1 nonzero signed values.
    uint64_t range = (uint64_t(1) << value_bits) - 1;
    uint64_t r = bits % range;  // bias < 2^-48 for value_bits <= 16
    uint64_t half = uint64_t(1) << (value_bits - 1);
    if (r < half) return int32_t(int64_t(r) - int64_t(half));  // [-2^(vb-1), -1]
    return int32_t(r - half + 1);                              // [1, 2^(vb-1)-1]
}

}  // namespace detail

DenseMatrix random_matrix(int rows, int cols, double density, uint64_t seed,
                          const BitWidths& bw) {
    if (density < 0.0 || density > 1.0) throw Error("density out of [0,1]");
    DenseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(size_t(rows) * cols, 0);
    for_each_random_nonzero(rows, cols, density, seed, bw,
                            [&](int r, int c, int32_t v) { m.at(r, c) = v; });
    return m;
}

}  // namespace sod
