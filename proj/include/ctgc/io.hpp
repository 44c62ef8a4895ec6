#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>

#include "ctgc/errors.hpp"

// Binary file formats. All multi-byte values are little-endian.
//
//   CTGF  feature matrix: magic, u32 rows, u32 cols, rows*cols f32 row-major
//   CTGD  dense f64 matrix: magic, u32 rows, u32 cols, f64 row-major
//   CTGA  condensed adjacency: magic, u32 n, f64 row-major (n*n)
//
// CTGD and CTGA share a layout; CTGA fixes rows == cols.

namespace ctgc::io {

Eigen::MatrixXf read_features(const std::filesystem::path& path);
void write_features(const std::filesystem::path& path, const Eigen::MatrixXf& m);

// CSV fallback for features: header-free, comma-separated floats.
Eigen::MatrixXf read_features_csv(const std::filesystem::path& path);

Eigen::MatrixXd read_dense_f64(const std::filesystem::path& path, const char magic[4]);
void write_dense_f64(const std::filesystem::path& path, const char magic[4],
                     const Eigen::MatrixXd& m, bool square = false);

std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

// FNV-1a over a byte range; used for pipeline artifact caching.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 14695981039346656037ull);
std::uint64_t fnv1a_file(const std::filesystem::path& path);
std::uint64_t fnv1a_string(const std::string& s);

}  // namespace ctgc::io
