#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace burstvit {

using Shape = std::vector<long>;

std::string shape_str(const Shape& s);
long shape_numel(const Shape& s);

// Thrown on any shape disagreement; message names both shapes.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an operation's input contract is violated (e.g. negative
// spike counts fed to an addition-only kernel).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense row-major float tensor. Weights, membrane potentials, logits.
struct Tensor {
  Shape shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(Shape s);
  Tensor(Shape s, std::vector<double> d);

  static Tensor zeros(const Shape& s) { return Tensor(s); }
  static Tensor full(const Shape& s, double v);

  long numel() const { return static_cast<long>(data.size()); }
  long dim(int i) const { return shape[static_cast<size_t>(i)]; }
  int rank() const { return static_cast<int>(shape.size()); }
  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }
};

// Dense row-major int32 tensor. Spike and burst payloads.
struct IntTensor {
  Shape shape;
  std::vector<int32_t> data;

  IntTensor() = default;
  explicit IntTensor(Shape s);
  IntTensor(Shape s, std::vector<int32_t> d);

  static IntTensor zeros(const Shape& s) { return IntTensor(s); }

  long numel() const { return static_cast<long>(data.size()); }
  long dim(int i) const { return shape[static_cast<size_t>(i)]; }
  int rank() const { return static_cast<int>(shape.size()); }
  int32_t* ptr() { return data.data(); }
  const int32_t* ptr() const { return data.data(); }

  long long sum() const;
  Tensor to_float() const;
};

void check_shape_eq(const Shape& a, const Shape& b, const char* what);

}  // namespace burstvit
