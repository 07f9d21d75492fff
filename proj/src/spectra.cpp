#include "briwt/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace briwt::spectra {

SymMatrix::SymMatrix(int n) : n_(n) {
  if (n < 1 || n > 4096) throw std::invalid_argument("matrix dimension out of range");
  a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument("matrix rows must be square");
    for (int j = 0; j < n; ++j)
      m.a_[static_cast<std::size_t>(i) * n + j] = rows[i][j];
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = m.at(i, j), b = m.at(j, i);
      const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
      if (std::fabs(a - b) > 1e-12 * scale)
        throw std::invalid_argument("asymmetric input matrix");
    }
  }
  return m;
}

namespace {

double offdiag_frobenius(const std::vector<double>& a, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = a[static_cast<std::size_t>(i) * n + j];
      s += 2 * v * v;
    }
  return std::sqrt(s);
}

}  // namespace

std::vector<double> sym_eigenvalues(const SymMatrix& m, double tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  const int n = m.size();
  std::vector<double> a = m.data();
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  if (n == 1) return {a[0]};

  const int max_sweeps = 100;
  int sweep = 0;
  while (offdiag_frobenius(a, n) >= tol) {
    if (++sweep > max_sweeps) throw std::logic_error("Jacobi iteration failed to converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[idx(p, q)];
        if (apq == 0.0) continue;
        const double app = a[idx(p, p)], aqq = a[idx(q, q)];
        // Rotation angle per the standard Jacobi recurrence.
        const double theta = (aqq - app) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[idx(k, p)], akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[idx(p, k)], aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = a[idx(i, i)];
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

double second_largest_modulus(const SymMatrix& m) {
  const int n = m.size();
  double row0 = 0;
  for (int j = 0; j < n; ++j) row0 += m.at(0, j);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j) < 0) throw std::invalid_argument("matrix entries must be nonnegative");
      s += m.at(i, j);
    }
    if (std::fabs(s - row0) > 1e-9)
      throw std::invalid_argument("row sums not constant");
  }
  if (n == 1) return 0.0;
  const std::vector<double> eigs = sym_eigenvalues(m);
  return std::max(std::fabs(eigs[1]), std::fabs(eigs[n - 1]));
}

bool quadratic_bound_check(const SymMatrix& p, const std::vector<double>& w, double slack) {
  const int n = p.size();
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("vector size mismatch");
  const double lambda2 = second_largest_modulus(p);
  double quad = 0, norm2 = 0, total = 0;
  for (int i = 0; i < n; ++i) {
    double pw = 0;
    for (int j = 0; j < n; ++j) pw += p.at(i, j) * w[j];
    quad += w[i] * pw;
    norm2 += w[i] * w[i];
    total += w[i];
  }
  return quad <= lambda2 * norm2 + total * total / n + slack;
}

std::vector<std::pair<double, int>> cluster_eigenvalues(const std::vector<double>& eigs,
                                                        double gap) {
  std::vector<std::pair<double, int>> out;
  for (double e : eigs) {
    if (!out.empty() && std::fabs(out.back().first - e) < gap) {
      ++out.back().second;
    } else {
      out.emplace_back(e, 1);
    }
  }
  return out;
}

}  // namespace briwt::spectra
