#include "sod/decomp.hpp"

#include <algorithm>

namespace sod {

namespace {

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

void check_config(const DecompConfig& cfg) {
    if (cfg.nz_fetch_width <= 0 || cfg.ptr_fetch_width <= 0 || cfg.pipeline_latency <= 0 ||
        cfg.dense_feed_width <= 0) {
        throw Error("decompression config fields must be positive");
    }
}

}  // namespace

uint64_t load_pointer_cycles(const CscMatrix& c, const DecompConfig& cfg) {
    check_config(cfg);
    return ceil_div(uint64_t(c.cols) + 1, uint64_t(cfg.ptr_fetch_width));
}

std::vector<uint64_t> column_lengths(std::span<const uint64_t> col_pointers) {
    if (col_pointers.empty()) throw MalformedCsc("empty pointer sequence");
    std::vector<uint64_t> out;
    out.reserve(col_pointers.size() - 1);
    for (size_t i = 0; i + 1 < col_pointers.size(); ++i) {
        if (col_pointers[i + 1] < col_pointers[i]) {
            throw MalformedCsc("negative column length at column " + std::to_string(i));
        }
        out.push_back(col_pointers[i + 1] - col_pointers[i]);
    }
    return out;
}

DecompTrace simulate_decompression(const CscMatrix& c, const DecompConfig& cfg) {
    validate_structure(c);
    check_config(cfg);

    DecompTrace trace;
    trace.ptr_words_read = load_pointer_cycles(c, cfg);
    trace.nz_words_read = ceil_div(c.nnz(), uint64_t(cfg.nz_fetch_width));

    // Step 1/2: pointer fetch, then per-column lengths by subtraction.
    const uint64_t ptr_cycles = trace.ptr_words_read;
    const std::vector<uint64_t> lengths = column_lengths(c.col_pointers);

    // Steps 3/4: nonzeros stream in nz_fetch_width-wide rows; a fetched row
    // may span several source columns and every element in it is routed to
    // its dense-buffer slot in the same cycle. Element i clears the pipe at
    // ptr_cycles + (i / width + 1) + pipeline_latency.
    trace.dense_out.rows = c.rows;
    trace.dense_out.cols = c.cols;
    trace.dense_out.data.assign(size_t(c.rows) * c.cols, 0);
    for (int col = 0; col < c.cols; ++col) {
        for (uint64_t i = c.col_pointers[col]; i < c.col_pointers[size_t(col) + 1]; ++i) {
            trace.dense_out.at(int(c.row_indices[i]), col) = c.values[i];
        }
    }

    // Step 5: dense emission, column by column, dense_feed_width elements
    // per cycle. A feed group waits until its last nonzero has been routed.
    auto arrival = [&](uint64_t elem_idx) {
        return ptr_cycles + (elem_idx / uint64_t(cfg.nz_fetch_width) + 1) +
               uint64_t(cfg.pipeline_latency);
    };
    const uint64_t groups_per_col = ceil_div(uint64_t(c.rows), uint64_t(cfg.dense_feed_width));
    uint64_t cycle = ptr_cycles + uint64_t(cfg.pipeline_latency);
    uint64_t stalled = 0;
    uint64_t next_elem = 0;
    for (int col = 0; col < c.cols; ++col) {
        const uint64_t col_end = next_elem + lengths[col];
        for (uint64_t g = 0; g < groups_per_col; ++g) {
            const uint32_t row_end = uint32_t((g + 1) * uint64_t(cfg.dense_feed_width));
            uint64_t ready = 0;
            while (next_elem < col_end && c.row_indices[next_elem] < row_end) {
                ready = arrival(next_elem);
                ++next_elem;
            }
            uint64_t slot = std::max(cycle + 1, ready);
            stalled += slot - (cycle + 1);
            cycle = slot;
        }
    }
    trace.cycles_total = cycle;
    trace.cycles_stalled = stalled;
    return trace;
}

}  // namespace sod
