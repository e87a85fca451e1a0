#include "srbench/rlfn/tensor.hpp"

#include <cmath>

#include "srbench/errors.hpp"

namespace srbench::rlfn {

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
  std::size_t n = 1;
  for (const int d : shape) {
    if (d < 1) throw InvalidDimensions("tensor dimensions must be positive");
    n *= static_cast<std::size_t>(d);
  }
  v.assign(n, 0.0);
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (!same_shape(other)) throw InternalError("tensor shape mismatch in +=");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.v[i];
  return *this;
}

void Tensor::zero() { std::fill(v.begin(), v.end(), 0.0); }

bool Tensor::all_finite() const noexcept {
  for (const double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void Tensor::round_to_f32() {
  for (double& x : v) x = static_cast<double>(static_cast<float>(x));
}

Tensor add(const Tensor& a, const Tensor& b) {
  Tensor out = a;
  out += b;
  return out;
}

}  // namespace srbench::rlfn
