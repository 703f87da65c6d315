#include "burstvit/adjacency.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace burstvit {

long long AdjacencyMask::nnz() const {
  long long n = 0;
  for (uint8_t v : dense) n += v;
  return n;
}

AdjacencyMask build_adjacency(int grid_h, int grid_w) {
  if (grid_h < 1 || grid_w < 1)
    throw std::invalid_argument("build_adjacency: grid dimensions must be >= 1, got " +
                                std::to_string(grid_h) + "x" + std::to_string(grid_w));
  AdjacencyMask m;
  m.grid_h = grid_h;
  m.grid_w = grid_w;
  const int n = grid_h * grid_w;
  m.dense.assign(static_cast<size_t>(n) * n, 0);
  m.neighbors.resize(static_cast<size_t>(n));
  for (int r = 0; r < grid_h; ++r) {
    for (int c = 0; c < grid_w; ++c) {
      const int i = r * grid_w + c;
      for (int dr = -1; dr <= 1; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= grid_h) continue;
        for (int dc = -1; dc <= 1; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= grid_w) continue;
          const int j = rr * grid_w + cc;
          m.dense[static_cast<size_t>(i) * n + j] = 1;
          m.neighbors[static_cast<size_t>(i)].push_back(j);
        }
      }
    }
  }
  return m;
}

void write_adjacency(const AdjacencyMask& mask, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_adjacency: cannot open " + path);
  nlohmann::json header = {
      {"grid_h", mask.grid_h}, {"grid_w", mask.grid_w}, {"nnz", mask.nnz()}};
  f << header.dump() << "\n";
  const int n = mask.tokens();
  const int row_bytes = (n + 7) / 8;
  std::vector<uint8_t> row(static_cast<size_t>(row_bytes));
  for (int i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (int j = 0; j < n; ++j)
      if (mask.at(i, j)) row[static_cast<size_t>(j / 8)] |= static_cast<uint8_t>(1u << (j % 8));
    f.write(reinterpret_cast<const char*>(row.data()), row_bytes);
  }
}

AdjacencyMask read_adjacency(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_adjacency: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("read_adjacency: missing header in " + path);
  nlohmann::json header = nlohmann::json::parse(line);
  AdjacencyMask m;
  m.grid_h = header.at("grid_h").get<int>();
  m.grid_w = header.at("grid_w").get<int>();
  const int n = m.tokens();
  const int row_bytes = (n + 7) / 8;
  m.dense.assign(static_cast<size_t>(n) * n, 0);
  m.neighbors.resize(static_cast<size_t>(n));
  std::vector<uint8_t> row(static_cast<size_t>(row_bytes));
  for (int i = 0; i < n; ++i) {
    if (!f.read(reinterpret_cast<char*>(row.data()), row_bytes))
      throw std::runtime_error("read_adjacency: truncated bit matrix in " + path);
    for (int j = 0; j < n; ++j)
      if (row[static_cast<size_t>(j / 8)] & (1u << (j % 8))) {
        m.dense[static_cast<size_t>(i) * n + j] = 1;
        m.neighbors[static_cast<size_t>(i)].push_back(j);
      }
  }
  const long long expect = header.at("nnz").get<long long>();
  if (m.nnz() != expect)
    throw std::runtime_error("read_adjacency: nnz mismatch, header says " + std::to_string(expect) +
                             ", matrix has " + std::to_string(m.nnz()));
  return m;
}

}  // namespace burstvit
