#pragma once

#include <span>

#include "sod/matcore.hpp"

namespace sod {

// Decompression unit between the global buffer and the PE array:
// pointer fetch -> length subtraction -> element selection ->
// dense mapping -> array feed. nz_fetch_width >= dense_feed_width
// guarantees the dense side never waits at any density <= 1.
struct DecompConfig {
    int nz_fetch_width = 64;    // nonzero (value,index) pairs per cycle
    int ptr_fetch_width = 16;   // pointers per cycle
    int pipeline_latency = 4;   // fetch-to-dense-buffer-write stages
    int dense_feed_width = 64;  // dense elements per cycle to the array
    bool double_buffered = true;
};

struct DecompTrace {
    uint64_t cycles_total = 0;
    uint64_t cycles_stalled = 0;
    uint64_t nz_words_read = 0;   // fetch transactions on the nonzero port
    uint64_t ptr_words_read = 0;  // fetch transactions on the pointer port
    DenseMatrix dense_out;
};

// Step 1: ceil((cols+1) / ptr_fetch_width) cycles.
uint64_t load_pointer_cycles(const CscMatrix& c, const DecompConfig& cfg);

// Step 2: out[c] = ptr[c+1] - ptr[c]; throws MalformedCsc on a negative
// difference.
std::vector<uint64_t> column_lengths(std::span<const uint64_t> col_pointers);

DecompTrace simulate_decompression(const CscMatrix& c, const DecompConfig& cfg);

}  // namespace sod
