// Builds a small cross matrix and runs the main operations on it.

#include <complex>
#include <iostream>

#include "crossmat/crossmat.hpp"

using namespace crossmat;

int main() {
  // [[1 0 4]
  //  [0 2 0]
  //  [5 0 3]]
  const CrossMatrix<double> x(3, {1, 2, 3}, {4, 2, 5});

  std::cout << "X =\n" << xmat::format_dense(to_dense(x));
  std::cout << "det(X) = " << det(x) << "\n";
  std::cout << "inverse:\n" << xmat::serialize(inverse(x));

  const auto v = solve(x, std::vector<double>{1, 2, 5});
  std::cout << "solve X v = [1 2 5]: " << xmat::format_vector(v) << "\n";

  std::cout << "eigenvalues: " << xmat::format_vector(eigenvalues(x)) << "\n";

  const auto f = block_diagonalize(x);
  std::cout << "P X P^T =\n" << xmat::format_dense(block_diagonal_dense(f));

  const auto q = qr(x);
  std::cout << "Q =\n" << xmat::format_dense(to_dense(q.Q));
  std::cout << "R =\n" << xmat::format_dense(to_dense(q.R));

  const auto s = svd(x);
  std::cout << "singular values: " << xmat::format_vector(s.S) << "\n";

  // Complex scalars use the same API.
  using C = std::complex<double>;
  const CrossMatrix<C> z(2, {C(1, 1), C(0, 2)}, {C(3, 0), C(1, -1)});
  std::cout << "det(Z) = " << xmat::format_scalar(det(z)) << "\n";
  const auto p = polar(z);
  std::cout << "polar H =\n" << xmat::format_dense(to_dense(p.H));
  return 0;
}
