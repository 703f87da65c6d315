#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace burstvit {

// Self-inclusive 8-connected patch neighborhood on an (grid_h x grid_w)
// token grid, tokens in row-major order. Symmetric, unit diagonal, entry
// (i,j) = 1 iff Chebyshev distance <= 1.
struct AdjacencyMask {
  int grid_h = 0;
  int grid_w = 0;
  std::vector<uint8_t> dense;               // N*N row-major
  std::vector<std::vector<int>> neighbors;  // per-row sorted index lists

  int tokens() const { return grid_h * grid_w; }
  long long nnz() const;
  bool at(int i, int j) const { return dense[static_cast<size_t>(i) * tokens() + j] != 0; }
};

AdjacencyMask build_adjacency(int grid_h, int grid_w);

// File format: one JSON header line {"grid_h":..,"grid_w":..,"nnz":..},
// then each row packed LSB-first into ceil(N/8) bytes.
void write_adjacency(const AdjacencyMask& mask, const std::string& path);
AdjacencyMask read_adjacency(const std::string& path);

}  // namespace burstvit
