#pragma once

#include <cstddef>
#include <vector>

namespace briwt::spectra {

// Dense symmetric matrix, row-major.  set() writes both mirror entries so the
// invariant cannot be broken through the public surface; from_rows validates
// symmetry of externally supplied data.
class SymMatrix {
 public:
  explicit SymMatrix(int n);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }
  const std::vector<double>& data() const { return a_; }

 private:
  int n_;
  std::vector<double> a_;
};

// All eigenvalues in descending order, each within tol of the true spectrum.
// Cyclic Jacobi, iterated until the off-diagonal Frobenius mass drops under
// tol.  Dimension capped at 4096.
std::vector<double> sym_eigenvalues(const SymMatrix& m, double tol = 1e-9);

// max(|mu_2|, |mu_n|) for a nonnegative matrix with constant row sums, the
// top eigenvalue being the one carried by the all-one vector.
double second_largest_modulus(const SymMatrix& m);

// w'Pw <= lambda2 w'w + (1'w)^2/n for a symmetric stochastic P, checked with
// the given slack.
bool quadratic_bound_check(const SymMatrix& p, const std::vector<double>& w,
                           double slack = 1e-9);

// Groups a descending eigenvalue list into clusters whose neighbours are
// closer than gap; returns (representative value, multiplicity) pairs.
std::vector<std::pair<double, int>> cluster_eigenvalues(const std::vector<double>& eigs,
                                                        double gap = 1e-7);

}  // namespace briwt::spectra
