#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sod/csc_file.hpp"
#include "sod/matcore.hpp"

#include <sstream>

using namespace sod;

namespace {

DenseMatrix from_rows(std::vector<std::vector<int32_t>> rows) {
    DenseMatrix m;
    m.rows = int(rows.size());
    m.cols = int(rows[0].size());
    for (auto& r : rows) m.data.insert(m.data.end(), r.begin(), r.end());
    return m;
}

}  // namespace

TEST_CASE("csc_encode matches the hand-traced column scan") {
    DenseMatrix m = from_rows({{1, 0, 2}, {0, 3, 0}, {4, 0, 5}});
    CscMatrix c = csc_encode(m);
    CHECK(c.values == std::vector<int32_t>{1, 4, 3, 2, 5});
    CHECK(c.row_indices == std::vector<uint32_t>{0, 2, 1, 0, 2});
    CHECK(c.col_pointers == std::vector<uint64_t>{0, 2, 3, 5});
    CHECK(csc_decode(c) == m);
}

TEST_CASE("csc_encode of an all-zero matrix is empty") {
    DenseMatrix m;
    m.rows = m.cols = 3;
    m.data.assign(9, 0);
    CscMatrix c = csc_encode(m);
    CHECK(c.values.empty());
    CHECK(c.row_indices.empty());
    CHECK(c.col_pointers == std::vector<uint64_t>{0, 0, 0, 0});
    CHECK(csc_decode(c) == m);
}

TEST_CASE("csc_encode of a fully dense matrix") {
    DenseMatrix m = from_rows({{7, 8}, {9, 1}});
    CscMatrix c = csc_encode(m);
    CHECK(c.nnz() == 4);
    CHECK(c.col_pointers == std::vector<uint64_t>{0, 2, 4});
}

TEST_CASE("encode rejects rows beyond the index range") {
    DenseMatrix m;
    m.rows = 257;
    m.cols = 1;
    m.data.assign(257, 1);
    CHECK_THROWS_AS(csc_encode(m), RowIndexOverflow);
    BitWidths wide;
    wide.index_bits = 16;
    // decode stays structural: tall matrices from wide-index encodes work
    CHECK(csc_decode(csc_encode(m, wide)) == m);
}

TEST_CASE("encode rejects values beyond value_bits") {
    DenseMatrix m = from_rows({{70000, 1}});
    CHECK_THROWS_AS(csc_encode(m), Error);
    BitWidths wide;
    wide.value_bits = 24;
    CHECK(csc_decode(csc_encode(m, wide)) == m);
}

TEST_CASE("width validation flags unrepresentable stored matrices") {
    CscMatrix c;
    c.rows = c.cols = 2;
    c.values = {40000};
    c.row_indices = {0};
    c.col_pointers = {0, 1, 1};
    CHECK_NOTHROW(validate_structure(c));
    CHECK_THROWS_AS(validate(c, BitWidths{}), MalformedCsc);  // needs 17 bits
    BitWidths wide;
    wide.value_bits = 17;
    CHECK_NOTHROW(validate(c, wide));
}

TEST_CASE("csc_decode rejects malformed inputs") {
    CscMatrix c;
    c.rows = c.cols = 2;
    c.values = {1};
    c.row_indices = {0};
    c.col_pointers = {0, 1, 1};

    SUBCASE("valid") { CHECK_NOTHROW(csc_decode(c)); }
    SUBCASE("nonzero first pointer") {
        c.col_pointers = {1, 1, 1};
        CHECK_THROWS_AS(csc_decode(c), MalformedCsc);
    }
    SUBCASE("decreasing pointers") {
        c.col_pointers = {0, 1, 0};
        CHECK_THROWS_AS(csc_decode(c), MalformedCsc);
    }
    SUBCASE("row index out of range") {
        c.row_indices = {5};
        CHECK_THROWS_AS(csc_decode(c), MalformedCsc);
    }
    SUBCASE("stored zero") {
        c.values = {0};
        CHECK_THROWS_AS(csc_decode(c), MalformedCsc);
    }
    SUBCASE("unsorted rows in a column") {
        c.values = {1, 2};
        c.row_indices = {1, 0};
        c.col_pointers = {0, 2, 2};
        CHECK_THROWS_AS(csc_decode(c), MalformedCsc);
    }
}

TEST_CASE("round trip over random matrices") {
    SplitMix64 pick(2024);
    for (int i = 0; i < 300; ++i) {
        int rows = 1 + int(pick.next() % 256);
        int cols = 1 + int(pick.next() % 96);
        double density = pick.next_unit();
        DenseMatrix m = random_matrix(rows, cols, density, pick.next());
        CHECK(csc_decode(csc_encode(m)) == m);
    }
}

TEST_CASE("footprint formulas") {
    BitWidths bw;
    CHECK(footprint_bits(64, 64, 0, MatrixFormat::kDense, bw) == 65536);
    CHECK(footprint_bits(64, 64, 410, MatrixFormat::kCsc, bw) == 410 * 24 + 65 * 16);
    CHECK(footprint_bits(64, 64, 410, MatrixFormat::kCsc, bw) == 10880);

    // csc beats dense exactly below nnz = (65536 - 1040) / 24
    uint64_t boundary = (65536 - 65 * 16) / 24;  // 2687
    CHECK(footprint_bits(64, 64, boundary, MatrixFormat::kCsc, bw) < 65536);
    CHECK(footprint_bits(64, 64, boundary + 1, MatrixFormat::kCsc, bw) >= 65536);
    CHECK(double(boundary) / 4096 == doctest::Approx(0.656).epsilon(0.001));
}

TEST_CASE("csc footprint strictly increases with nnz") {
    BitWidths bw;
    uint64_t prev = 0;
    for (uint64_t nnz = 0; nnz <= 4096; nnz += 64) {
        uint64_t f = footprint_bits(64, 64, nnz, MatrixFormat::kCsc, bw);
        if (nnz) CHECK(f > prev);
        prev = f;
    }
}

TEST_CASE("tile grid partitions exactly") {
    auto full = tile_grid(128, 128, 64, 64);
    CHECK(full.size() == 4);
    for (const auto& t : full) {
        CHECK(t.tile_rows == 64);
        CHECK(t.tile_cols == 64);
    }

    auto edge = tile_grid(100, 64, 64, 64);
    REQUIRE(edge.size() == 2);
    CHECK(edge[0].tile_rows == 64);
    CHECK(edge[1].tile_rows == 36);
    CHECK(edge[1].row_offset == 64);

    auto tiny = tile_grid(1, 1, 64, 64);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].tile_rows == 1);
    CHECK(tiny[0].tile_cols == 1);

    // union covers every element exactly once
    SplitMix64 pick(7);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + int(pick.next() % 200);
        int cols = 1 + int(pick.next() % 200);
        int tr = 1 + int(pick.next() % 70);
        int tc = 1 + int(pick.next() % 70);
        std::vector<int> hits(size_t(rows) * cols, 0);
        for (const auto& t : tile_grid(rows, cols, tr, tc)) {
            for (int r = 0; r < t.tile_rows; ++r) {
                for (int c = 0; c < t.tile_cols; ++c) {
                    hits[size_t(t.row_offset + r) * cols + (t.col_offset + c)]++;
                }
            }
        }
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("per-tile compression round trips and keeps indices in 8 bits") {
    // tiles are the unit of compression: a 256x256 operand encodes as
    // 64x64 tiles whose row indices all fit the default 8-bit width
    DenseMatrix m = random_matrix(256, 250, 0.3, 61);
    DenseMatrix back;
    back.rows = m.rows;
    back.cols = m.cols;
    back.data.assign(m.data.size(), 0);
    uint64_t stored = 0;
    for (const TilePlanEntry& t : tile_grid(m.rows, m.cols, 64, 64)) {
        CscMatrix enc = csc_encode(extract_tile(m, t));
        stored += footprint_bits(enc.rows, enc.cols, enc.nnz(), MatrixFormat::kCsc);
        for (uint32_t r : enc.row_indices) CHECK(r < 64);
        DenseMatrix dec = csc_decode(enc);
        for (int r = 0; r < dec.rows; ++r) {
            for (int c = 0; c < dec.cols; ++c) {
                back.at(t.row_offset + r, t.col_offset + c) = dec.at(r, c);
            }
        }
    }
    CHECK(back == m);
    // per-tile footprints sum to the value + index bits plus one pointer
    // array per tile
    uint64_t nnz = count_nonzeros(m);
    CHECK(stored == nnz * 24 + 4 * (3 * 65 + 59) * 16);
}

TEST_CASE("random_matrix endpoints and statistics") {
    DenseMatrix zero = random_matrix(32, 32, 0.0, 5);
    CHECK(count_nonzeros(zero) == 0);

    DenseMatrix full = random_matrix(32, 32, 1.0, 5);
    CHECK(count_nonzeros(full) == 32 * 32);

    DenseMatrix half = random_matrix(64, 64, 0.5, 99);
    double measured = double(count_nonzeros(half)) / 4096.0;
    CHECK(measured == doctest::Approx(0.5).epsilon(0.1));  // +-0.05 absolute
    CHECK(std::abs(measured - 0.5) < 0.05);
}

TEST_CASE("random_matrix is reproducible and seed-sensitive") {
    DenseMatrix a = random_matrix(48, 48, 0.3, 1234);
    DenseMatrix b = random_matrix(48, 48, 0.3, 1234);
    DenseMatrix c = random_matrix(48, 48, 0.3, 1235);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("splitmix64 reference sequence") {
    // First outputs for seed 1234567, from the published splitmix64
    // reference implementation.
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ull);
    CHECK(rng.next() == 3203168211198807973ull);
    CHECK(rng.next() == 9817491932198370423ull);
    CHECK(rng.next() == 4593380528125082431ull);
}

TEST_CASE("nonzero values span the full signed range and exclude zero") {
    DenseMatrix m = random_matrix(256, 256, 1.0, 77);
    int32_t lo = 0, hi = 0;
    for (int32_t v : m.data) {
        CHECK(v != 0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= -32768);
    CHECK(hi <= 32767);
    CHECK(lo < -32000);
    CHECK(hi > 32000);
}

TEST_CASE("bit width validation") {
    BitWidths bw;
    CHECK_NOTHROW(validate(bw, 65536));
    CHECK_THROWS_AS(validate(bw, 1 << 20), Error);
    bw.psum_bits = 0;
    CHECK_THROWS_AS(validate(bw, 1), Error);
}

TEST_CASE("csc file round trip") {
    SplitMix64 pick(31);
    for (int i = 0; i < 50; ++i) {
        int rows = 1 + int(pick.next() % 256);
        int cols = 1 + int(pick.next() % 64);
        DenseMatrix m = random_matrix(rows, cols, pick.next_unit(), pick.next());
        BitWidths bw;
        std::stringstream ss;
        write_csc(ss, csc_encode(m), bw);
        std::string first = ss.str();
        CscMatrix back = read_csc(ss);
        CHECK(csc_decode(back) == m);
        std::stringstream ss2;
        write_csc(ss2, back, bw);
        CHECK(ss2.str() == first);
    }
}

TEST_CASE("csc file rejects truncation and bad magic") {
    DenseMatrix m = random_matrix(32, 32, 0.4, 9);
    std::stringstream ss;
    write_csc(ss, csc_encode(m), BitWidths{});
    std::string bytes = ss.str();

    std::stringstream cut(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(read_csc(cut), MalformedCsc);

    bytes[0] = 'X';
    std::stringstream bad(bytes);
    CHECK_THROWS_WITH_AS(read_csc(bad), doctest::Contains("CSCM"), MalformedCsc);
}

TEST_CASE("csc file rejects an oversized nnz header") {
    DenseMatrix m = random_matrix(8, 8, 0.5, 2);
    std::stringstream ss;
    write_csc(ss, csc_encode(m), BitWidths{});
    std::string bytes = ss.str();
    bytes[14] = char(0xff);  // nnz low bytes start at offset 14
    bytes[15] = char(0xff);
    std::stringstream bad(bytes);
    CHECK_THROWS_WITH_AS(read_csc(bad), doctest::Contains("nnz"), MalformedCsc);
}

TEST_CASE("dense text dump round trips byte-identically") {
    DenseMatrix m = random_matrix(20, 13, 0.5, 4);
    std::stringstream ss;
    write_dense_text(ss, m);
    std::string first = ss.str();
    DenseMatrix back = read_dense_text(ss);
    CHECK(back == m);
    std::stringstream ss2;
    write_dense_text(ss2, back);
    CHECK(ss2.str() == first);
}

TEST_CASE("non-byte-aligned widths pack and unpack") {
    BitWidths bw;
    bw.value_bits = 12;
    bw.index_bits = 7;
    bw.pointer_bits = 20;
    DenseMatrix m;
    m.rows = 100;
    m.cols = 9;
    m.data.assign(900, 0);
    SplitMix64 rng(5);
    for (auto& v : m.data) {
        if (rng.next_unit() < 0.3) v = detail::nonzero_value_from_bits(rng.next(), 12);
    }
    std::stringstream ss;
    write_csc(ss, csc_encode(m, bw), bw);
    BitWidths read_bw;
    CscMatrix back = read_csc(ss, &read_bw);
    CHECK(read_bw.value_bits == 12);
    CHECK(csc_decode(back) == m);
}
