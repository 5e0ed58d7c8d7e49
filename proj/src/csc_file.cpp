#include "sod/csc_file.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace sod {

namespace {

void put_le(std::ostream& os, uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = char((v >> (8 * i)) & 0xff);
    os.write(buf, bytes);
}

uint64_t get_le(std::istream& is, int bytes) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), bytes);
    if (!is) throw MalformedCsc("truncated CSC stream");
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= uint64_t(buf[i]) << (8 * i);
    return v;
}

// LSB-first bit packer; each array is flushed to a byte boundary.
struct BitWriter {
    std::ostream& os;
    uint64_t acc = 0;
    int filled = 0;

    void put(uint64_t v, int bits) {
        acc |= (bits >= 64 ? v : (v & ((uint64_t(1) << bits) - 1))) << filled;
        filled += bits;
        while (filled >= 8) {
            os.put(char(acc & 0xff));
            acc >>= 8;
            filled -= 8;
        }
    }
    void flush() {
        if (filled > 0) {
            os.put(char(acc & 0xff));
            acc = 0;
            filled = 0;
        }
    }
};

struct BitReader {
    std::istream& is;
    uint64_t acc = 0;
    int avail = 0;

    uint64_t get(int bits) {
        while (avail < bits) {
            int ch = is.get();
            if (ch == EOF) throw MalformedCsc("truncated CSC stream");
            acc |= uint64_t(uint8_t(ch)) << avail;
            avail += 8;
        }
        uint64_t v = bits >= 64 ? acc : (acc & ((uint64_t(1) << bits) - 1));
        acc >>= bits;
        avail -= bits;
        return v;
    }
    void align() {
        acc = 0;
        avail = 0;
    }
};

int64_t sign_extend(uint64_t v, int bits) {
    uint64_t sign = uint64_t(1) << (bits - 1);
    return int64_t((v ^ sign)) - int64_t(sign);
}

}  // namespace

void write_csc(std::ostream& os, const CscMatrix& c, const BitWidths& bw) {
    validate(c, bw);
    os.write(kCscMagic, 4);
    put_le(os, kCscVersion, 2);
    put_le(os, uint32_t(c.rows), 4);
    put_le(os, uint32_t(c.cols), 4);
    put_le(os, c.nnz(), 8);
    put_le(os, uint8_t(bw.value_bits), 1);
    put_le(os, uint8_t(bw.index_bits), 1);
    put_le(os, uint8_t(bw.pointer_bits), 1);
    put_le(os, 0, 1);  // reserved
    BitWriter w{os};
    for (uint64_t p : c.col_pointers) w.put(p, bw.pointer_bits);
    w.flush();
    for (uint32_t r : c.row_indices) w.put(r, bw.index_bits);
    w.flush();
    for (int32_t v : c.values) w.put(uint64_t(uint32_t(v)), bw.value_bits);
    w.flush();
}

CscMatrix read_csc(std::istream& is, BitWidths* bw_out) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kCscMagic, 4) != 0) {
        throw MalformedCsc("bad magic, expected \"CSCM\"");
    }
    uint16_t version = uint16_t(get_le(is, 2));
    if (version != kCscVersion) {
        throw MalformedCsc("unsupported CSC version " + std::to_string(version));
    }
    CscMatrix c;
    c.rows = int(get_le(is, 4));
    c.cols = int(get_le(is, 4));
    uint64_t nnz = get_le(is, 8);
    BitWidths bw;
    bw.value_bits = int(get_le(is, 1));
    bw.index_bits = int(get_le(is, 1));
    bw.pointer_bits = int(get_le(is, 1));
    get_le(is, 1);  // reserved
    if (c.rows <= 0 || c.cols <= 0 || bw.value_bits <= 0 || bw.value_bits > 31 ||
        bw.index_bits <= 0 || bw.index_bits > 32 || bw.pointer_bits <= 0 ||
        bw.pointer_bits > 64) {
        throw MalformedCsc("invalid CSC header fields");
    }
    if (nnz > uint64_t(c.rows) * uint64_t(c.cols)) {
        throw MalformedCsc("header nnz exceeds the matrix size");
    }
    BitReader r{is};
    c.col_pointers.resize(size_t(c.cols) + 1);
    for (auto& p : c.col_pointers) p = r.get(bw.pointer_bits);
    r.align();
    c.row_indices.resize(nnz);
    for (auto& idx : c.row_indices) idx = uint32_t(r.get(bw.index_bits));
    r.align();
    c.values.resize(nnz);
    for (auto& v : c.values) v = int32_t(sign_extend(r.get(bw.value_bits), bw.value_bits));
    validate(c, bw);
    if (bw_out) *bw_out = bw;
    return c;
}

void write_csc_file(const std::string& path, const CscMatrix& c, const BitWidths& bw) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for write: " + path);
    write_csc(os, c, bw);
    if (!os) throw Error("write failed: " + path);
}

CscMatrix read_csc_file(const std::string& path, BitWidths* bw_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open for read: " + path);
    return read_csc(is, bw_out);
}

void write_dense_text(std::ostream& os, const DenseMatrix& m) {
    os << m.rows << ' ' << m.cols << '\n';
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            if (c) os << ' ';
            os << m.at(r, c);
        }
        os << '\n';
    }
}

DenseMatrix read_dense_text(std::istream& is) {
    DenseMatrix m;
    if (!(is >> m.rows >> m.cols) || m.rows <= 0 || m.cols <= 0) {
        throw Error("bad dense dump header");
    }
    m.data.resize(size_t(m.rows) * m.cols);
    for (auto& v : m.data) {
        if (!(is >> v)) throw Error("truncated dense dump");
    }
    return m;
}

void write_dense_text_file(const std::string& path, const DenseMatrix& m) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for write: " + path);
    write_dense_text(os, m);
    if (!os) throw Error("write failed: " + path);
}

DenseMatrix read_dense_text_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open for read: " + path);
    return read_dense_text(is);
}

}  // namespace sod
