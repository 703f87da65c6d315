#include "burstvit/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace burstvit {

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << "x";
    os << s[i];
  }
  os << ")";
  return os.str();
}

long shape_numel(const Shape& s) {
  long n = 1;
  for (long d : s) {
    if (d < 1) throw ShapeError("shape dimension < 1 in " + shape_str(s));
    n *= d;
  }
  return n;
}

Tensor::Tensor(Shape s) : shape(std::move(s)), data(static_cast<size_t>(shape_numel(shape)), 0.0) {}

Tensor::Tensor(Shape s, std::vector<double> d) : shape(std::move(s)), data(std::move(d)) {
  if (shape_numel(shape) != static_cast<long>(data.size()))
    throw ShapeError("buffer length " + std::to_string(data.size()) +
                     " does not match shape " + shape_str(shape));
}

Tensor Tensor::full(const Shape& s, double v) {
  Tensor t(s);
  std::fill(t.data.begin(), t.data.end(), v);
  return t;
}

IntTensor::IntTensor(Shape s)
    : shape(std::move(s)), data(static_cast<size_t>(shape_numel(shape)), 0) {}

IntTensor::IntTensor(Shape s, std::vector<int32_t> d) : shape(std::move(s)), data(std::move(d)) {
  if (shape_numel(shape) != static_cast<long>(data.size()))
    throw ShapeError("buffer length " + std::to_string(data.size()) +
                     " does not match shape " + shape_str(shape));
}

long long IntTensor::sum() const {
  long long s = 0;
  for (int32_t v : data) s += v;
  return s;
}

Tensor IntTensor::to_float() const {
  Tensor t(shape);
  for (size_t i = 0; i < data.size(); ++i) t.data[i] = static_cast<double>(data[i]);
  return t;
}

void check_shape_eq(const Shape& a, const Shape& b, const char* what) {
  if (a != b)
    throw ShapeError(std::string(what) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
}

}  // namespace burstvit
