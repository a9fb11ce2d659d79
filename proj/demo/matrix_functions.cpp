// Matrix functions of cross matrices stay cross-shaped.

#include <cmath>
#include <iostream>

#include "crossmat/crossmat.hpp"

using namespace crossmat;

int main() {
  const auto j = CrossMatrix<double>::exchange(4);
  std::cout << "exp(J):\n" << xmat::format_dense(to_dense(expm(j)));

  const CrossMatrix<double> spd(3, {4, 9, 4}, {1, 9, 1});
  const auto r = sqrtm(spd);
  std::cout << "sqrtm:\n" << xmat::format_dense(to_dense(r));
  std::cout << "max |sqrtm^2 - X| = " << max_abs(r * r - spd) << "\n";

  // A user-supplied function: cos, with its derivative for repeated
  // eigenvalues.
  ScalarFunction<double> cosf{[](std::complex<double> z) { return std::cos(z); },
                              [](std::complex<double> z) { return -std::sin(z); }, "cos"};
  std::cout << "cos(X):\n" << xmat::format_dense(to_dense(apply(spd, cosf)));

  std::cout << "X^5:\n" << xmat::serialize(power(spd, 5));
  return 0;
}
