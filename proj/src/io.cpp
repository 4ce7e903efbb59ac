// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace teamc {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + static_cast<std::size_t>(i)])) << (8 * i);
    return v;
}

}  // namespace

std::string encode_tokens(const TokenMatrix& m) {
    constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
    if (m.rows() > kMax || m.cols() > kMax)
        throw ParameterError("encode_tokens: matrix too large for a u32 header");
    require_finite(m, "encode_tokens");
    std::string out;
    out.reserve(kTokenHeaderBytes + 4 * static_cast<std::size_t>(m.size()));
    out.append(kTokenMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(m.rows()));
    put_u32(out, static_cast<std::uint32_t>(m.cols()));
    for (Index i = 0; i < m.size(); ++i)
        put_u32(out, std::bit_cast<std::uint32_t>(m.data()[i]));
    return out;
}

TokenMatrix decode_tokens(std::string_view bytes) {
    if (bytes.size() < kTokenHeaderBytes)
        throw SizeError("token file truncated: " + std::to_string(bytes.size()) + " bytes, header needs 12");
    if (std::memcmp(bytes.data(), kTokenMagic, 4) != 0)
        throw MagicError("token file has bad magic (expected TKB1)");
    const std::uint64_t rows = get_u32(bytes, 4);
    const std::uint64_t cols = get_u32(bytes, 8);
    const std::uint64_t expected = kTokenHeaderBytes + 4 * rows * cols;
    if (bytes.size() != expected)
        throw SizeError("token file is " + std::to_string(bytes.size()) + " bytes, header implies " +
                        std::to_string(expected));
    if (cols == 0)
        throw SizeError("token file declares zero columns");
    TokenMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index i = 0; i < m.size(); ++i) {
        const float v = std::bit_cast<float>(get_u32(bytes, kTokenHeaderBytes + 4 * static_cast<std::size_t>(i)));
        if (!std::isfinite(v))
            throw NonFiniteError("token file holds a non-finite value at element " + std::to_string(i));
        m.data()[i] = v;
    }
    return m;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

void write_tokens(const TokenMatrix& m, const std::filesystem::path& path) {
    write_file(path, encode_tokens(m));
}

TokenMatrix read_tokens(const std::filesystem::path& path) {
    return decode_tokens(read_file(path));
}

std::string encode_mask_pgm(const BinaryMask& mask) {
    const PatchGrid& g = mask.grid();
    if (g.views != 1)
        throw ShapeError("export_mask_pgm: expects a single-view mask, got " + std::to_string(g.views) + " views");
    std::string out = "P5\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
    for (Index i = 0; i < g.total(); ++i)
        out.push_back(mask.test(i) ? static_cast<char>(255) : '\0');
    return out;
}

void export_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
    write_file(path, encode_mask_pgm(mask));
}

}  // namespace teamc
