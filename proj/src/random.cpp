#include "frameforge/random.hpp"

namespace frameforge {

CVector random_cvector(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

COperator random_coperator(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  COperator a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = Complex(re, im);
    }
  return a;
}

CVector random_unit_cvector(Rng& rng, Eigen::Index dim) {
  CVector v = random_cvector(rng, dim);
  return v / v.norm();
}

}  // namespace frameforge
