#include "ctgc/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace ctgc::io {

namespace {

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw FormatError("truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot write " + path.string());
  return os;
}

void check_magic(std::istream& is, const char magic[4], const std::filesystem::path& path) {
  char got[4];
  is.read(got, 4);
  if (!is || std::memcmp(got, magic, 4) != 0)
    throw FormatError("bad magic in " + path.string());
}

}  // namespace

Eigen::MatrixXf read_features(const std::filesystem::path& path) {
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw FormatError("cannot open " + path.string());
    char got[4] = {0, 0, 0, 0};
    probe.read(got, 4);
    if (std::memcmp(got, "CTGF", 4) != 0) return read_features_csv(path);
  }
  auto is = open_in(path);
  check_magic(is, "CTGF", path);
  const std::uint32_t rows = read_u32(is);
  const std::uint32_t cols = read_u32(is);
  Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(rows, cols);
  is.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(float) * rows * cols));
  if (!is) throw FormatError("truncated feature payload in " + path.string());
  return m;
}

void write_features(const std::filesystem::path& path, const Eigen::MatrixXf& m) {
  auto os = open_out(path);
  os.write("CTGF", 4);
  write_u32(os, static_cast<std::uint32_t>(m.rows()));
  write_u32(os, static_cast<std::uint32_t>(m.cols()));
  Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  os.write(reinterpret_cast<const char*>(rm.data()),
           static_cast<std::streamsize>(sizeof(float) * rm.size()));
}

Eigen::MatrixXf read_features_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path.string());
  std::vector<std::vector<float>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<float> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stof(cell));
      } catch (const std::exception&) {
        throw FormatError("non-numeric cell in " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("ragged CSV rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("empty feature file " + path.string());
  Eigen::MatrixXf m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_dense_f64(const std::filesystem::path& path, const char magic[4]) {
  auto is = open_in(path);
  check_magic(is, magic, path);
  const std::uint32_t rows = read_u32(is);
  std::uint32_t cols = rows;
  if (std::memcmp(magic, "CTGA", 4) != 0) cols = read_u32(is);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(rows, cols);
  is.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(double) * rows * cols));
  if (!is) throw FormatError("truncated payload in " + path.string());
  return m;
}

void write_dense_f64(const std::filesystem::path& path, const char magic[4],
                     const Eigen::MatrixXd& m, bool square) {
  if (square && m.rows() != m.cols()) throw ShapeMismatch("square matrix expected");
  auto os = open_out(path);
  os.write(magic, 4);
  write_u32(os, static_cast<std::uint32_t>(m.rows()));
  if (std::memcmp(magic, "CTGA", 4) != 0) write_u32(os, static_cast<std::uint32_t>(m.cols()));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  os.write(reinterpret_cast<const char*>(rm.data()),
           static_cast<std::streamsize>(sizeof(double) * rm.size()));
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path.string());
  std::vector<int> labels;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      labels.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw FormatError("non-integer label in " + path.string());
    }
  }
  return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FormatError("cannot write " + path.string());
  for (int y : labels) os << y << "\n";
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
  auto is = open_in(path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof(buf));
    h = fnv1a(buf, static_cast<std::size_t>(is.gcount()), h);
  }
  return h;
}

std::uint64_t fnv1a_string(const std::string& s) { return fnv1a(s.data(), s.size()); }

}  // namespace ctgc::io
