#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sod {

// Error kinds thrown by the simulator libraries. The CLI maps these to
// exit code 2 (validation) unless noted otherwise.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MalformedCsc : Error {
    explicit MalformedCsc(const std::string& msg) : Error(msg) {}
};

struct RowIndexOverflow : Error {
    explicit RowIndexOverflow(const std::string& msg) : Error(msg) {}
};

struct TileTooLarge : Error {
    explicit TileTooLarge(const std::string& msg) : Error(msg) {}
};

struct AccumulatorOverflow : Error {
    explicit AccumulatorOverflow(const std::string& msg) : Error(msg) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& msg) : Error(msg) {}
};

// Storage widths in bits. psum width must cover 2*value_bits plus
// log2 of the longest contraction accumulated in one register.
struct BitWidths {
    int value_bits = 16;
    int index_bits = 8;
    int pointer_bits = 16;
    int psum_bits = 48;

    int max_rows() const { return index_bits >= 31 ? INT32_MAX : (1 << index_bits); }
};

void validate(const BitWidths& bw, int64_t max_contraction_length = 1);

// Row-major dense matrix of signed integers, each representable in
// value_bits.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int32_t> data;  // rows*cols, row-major

    int32_t at(int r, int c) const { return data[size_t(r) * cols + c]; }
    int32_t& at(int r, int c) { return data[size_t(r) * cols + c]; }
    bool operator==(const DenseMatrix&) const = default;
};

// Compressed sparse column: nonzero values in column-major scan order,
// the row index of each value, and cols+1 running pointers.
struct CscMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int32_t> values;
    std::vector<uint32_t> row_indices;
    std::vector<uint64_t> col_pointers;  // size cols+1, col_pointers[0] == 0

    uint64_t nnz() const { return values.size(); }
};

// One entry of an exact, non-overlapping tiling of a rows x cols matrix.
struct TilePlanEntry {
    int row_offset = 0;
    int col_offset = 0;
    int tile_rows = 0;
    int tile_cols = 0;
};

enum class MatrixFormat { kDense, kCsc };

// Structural invariants only: pointer shape, sorted in-column rows,
// row < rows, no stored zeros. Throws MalformedCsc.
void validate_structure(const CscMatrix& c);
// Structure plus representability of rows and values in the widths.
void validate(const CscMatrix& c, const BitWidths& bw);

CscMatrix csc_encode(const DenseMatrix& m, const BitWidths& bw = {});
DenseMatrix csc_decode(const CscMatrix& c);

// Stored size of one matrix in the given format.
// dense: rows*cols*value_bits
// csc:   nnz*(value_bits+index_bits) + (cols+1)*pointer_bits
uint64_t footprint_bits(int64_t rows, int64_t cols, uint64_t nnz, MatrixFormat format,
                        const BitWidths& bw = {});
uint64_t footprint_bits(const DenseMatrix& m, MatrixFormat format, const BitWidths& bw = {});

// Row-major tile order; edge tiles truncated.
std::vector<TilePlanEntry> tile_grid(int rows, int cols, int tile_rows, int tile_cols);

DenseMatrix extract_tile(const DenseMatrix& m, const TilePlanEntry& t);

uint64_t count_nonzeros(const DenseMatrix& m);

// splitmix64: the portable seeded generator behind every random matrix
// in the project. Same (seed) sequence on every platform.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}
    uint64_t next();
    // Uniform in [0,1) with 53 random bits.
    double next_unit();
};

// Derives an independent stream seed from a base seed and stream tags.
uint64_t derive_seed(uint64_t base, uint64_t tag0, uint64_t tag1 = 0, uint64_t tag2 = 0);

// Each element is nonzero independently with probability `density`;
// nonzero values are uniform over the signed value_bits range minus zero.
// Bit-exact reproducible from (rows, cols, density, seed).
DenseMatrix random_matrix(int rows, int cols, double density, uint64_t seed,
                          const BitWidths& bw = {});

// Streams the same element sequence as random_matrix without
// materializing it. fn(r, c, value) is called for nonzero elements only.
template <typename Fn>
void for_each_random_nonzero(int rows, int cols, double density, uint64_t seed,
                             const BitWidths& bw, Fn&& fn);

namespace detail {
int32_t nonzero_value_from_bits(uint64_t bits, int value_bits);
}

template <typename Fn>
void for_each_random_nonzero(int rows, int cols, double density, uint64_t seed,
                             const BitWidths& bw, Fn&& fn) {
    SplitMix64 rng(seed);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (rng.next_unit() < density) {
                fn(r, c, detail::nonzero_value_from_bits(rng.next(), bw.value_bits));
            }
        }
    }
}

}  // namespace sod
