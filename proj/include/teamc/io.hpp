// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "teamc/core.hpp"

#include <filesystem>
#include <stdexcept>

namespace teamc {

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class MagicError : public DecodeError {
public:
    using DecodeError::DecodeError;
};
class SizeError : public DecodeError {
public:
    using DecodeError::DecodeError;
};
class NonFiniteError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Token container layout, all little-endian:
//   bytes 0..3   magic "TKB1"
//   bytes 4..7   rows (u32)
//   bytes 8..11  cols (u32)
//   then rows*cols f32 values, row-major.
inline constexpr char kTokenMagic[4] = {'T', 'K', 'B', '1'};
inline constexpr std::size_t kTokenHeaderBytes = 12;

std::string encode_tokens(const TokenMatrix& m);
TokenMatrix decode_tokens(std::string_view bytes);

void write_tokens(const TokenMatrix& m, const std::filesystem::path& path);
TokenMatrix read_tokens(const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255) of a single-view mask: set cells 255, others 0.
std::string encode_mask_pgm(const BinaryMask& mask);
void export_mask_pgm(const BinaryMask& mask, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace teamc
