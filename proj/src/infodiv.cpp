#include "briwt/infodiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace briwt::infodiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_size(const Density& a, const Density& b) {
  if (a.size() != b.size()) throw std::invalid_argument("measure supports differ in size");
}

}  // namespace

double mass(const Density& m) {
  double s = 0;
  for (double v : m) s += v;
  return s;
}

double kl(const Density& m1, const Density& m2) {
  check_same_size(m1, m2);
  double d = 0;
  for (std::size_t z = 0; z < m1.size(); ++z) {
    if (m1[z] == 0) continue;
    if (m2[z] == 0) return kInf;
    d += m1[z] * std::log2(m1[z] / m2[z]);
  }
  return d;
}

double renyi2(const Density& m1, const Density& m2) {
  check_same_size(m1, m2);
  double s = 0;
  for (std::size_t z = 0; z < m1.size(); ++z) {
    if (m1[z] == 0) continue;
    if (m2[z] == 0) return kInf;
    s += m1[z] * m1[z] / m2[z];
  }
  return std::log2(s);
}

double tv(const Density& m1, const Density& m2) {
  check_same_size(m1, m2);
  double s = 0;
  for (std::size_t z = 0; z < m1.size(); ++z) s += std::fabs(m1[z] - m2[z]);
  return s;
}

double cond_kl(const channels::DiscreteChannel& w, const Density& m, const Density& p) {
  if (static_cast<int>(p.size()) != w.inputs())
    throw std::invalid_argument("weight distribution does not match the input alphabet");
  double d = 0;
  Density row(w.outputs());
  for (int s = 0; s < w.inputs(); ++s) {
    if (p[s] == 0) continue;
    for (int z = 0; z < w.outputs(); ++z) row[z] = w.at(s, z);
    const double ds = kl(row, m);
    if (ds == kInf) return kInf;
    d += p[s] * ds;
  }
  return d;
}

double cond_renyi2(const channels::DiscreteChannel& w, const Density& m, const Density& p) {
  if (static_cast<int>(p.size()) != w.inputs())
    throw std::invalid_argument("weight distribution does not match the input alphabet");
  double s2 = 0;
  Density row(w.outputs());
  for (int s = 0; s < w.inputs(); ++s) {
    if (p[s] == 0) continue;
    for (int z = 0; z < w.outputs(); ++z) row[z] = w.at(s, z);
    const double d2 = renyi2(row, m);
    if (d2 == kInf) return kInf;
    s2 += p[s] * std::exp2(d2);
  }
  return std::log2(s2);
}

DivIneqReport check_div_inequalities(int n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DivIneqReport report;
  const double slack = 1e-9;

  auto random_density = [&](int n, double target_mass) {
    Density d(n);
    double s = 0;
    for (double& v : d) {
      v = unit(rng) + 1e-4;
      s += v;
    }
    for (double& v : d) v *= target_mass / s;
    return d;
  };

  for (int i = 0; i < n_samples; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);  // up to 8 points
    const double eps = 0.01 + 0.6 * unit(rng);      // below 1 - 1/e
    const double z1 = 1 - eps * unit(rng);
    const double z2 = 1 - eps * unit(rng);
    const Density m1 = random_density(n, z1);
    const Density m2 = random_density(n, z2);

    // Mass-weighted comparison of the two divergences.
    {
      const double lhs = kl(m1, m2);
      const double rhs = z1 * (renyi2(m1, m2) - std::log2(z1));
      const double margin = rhs - lhs;
      ++report.samples;
      if (margin < -slack) ++report.failures;
      report.worst_slack = std::min(report.worst_slack, margin);
    }

    // Conditional form with row masses in [1-eps, 1].
    {
      const int ns = 2 + static_cast<int>(rng() % 4);
      std::vector<std::vector<double>> rows(ns);
      for (auto& r : rows) r = random_density(n, 1 - eps * unit(rng));
      const auto wtil = channels::DiscreteChannel::subnormalized_from_matrix(rows);
      const Density ref = random_density(n, 1.0);
      Density p = random_density(ns, 1.0);
      const double lhs = cond_kl(wtil, ref, p);
      const double rhs =
          cond_renyi2(wtil, ref, p) - (1 - eps) * std::log2(1 - eps);
      const double margin = rhs - lhs;
      ++report.samples;
      if (margin < -slack) ++report.failures;
      report.worst_slack = std::min(report.worst_slack, margin);
    }
  }
  return report;
}

TrimSet::TrimSet(int inputs, int outputs, bool keep_all) : in_(inputs), out_(outputs) {
  keep_.assign(static_cast<std::size_t>(inputs) * outputs, keep_all ? 1 : 0);
}

long TrimSet::dropped_count() const {
  long c = 0;
  for (auto v : keep_) c += v == 0;
  return c;
}

channels::DiscreteChannel subnormalize(const channels::DiscreteChannel& w, const TrimSet& t) {
  if (t.inputs() != w.inputs() || t.outputs() != w.outputs())
    throw std::invalid_argument("trim set shape does not match the channel");
  std::vector<double> d(w.density());
  for (int x = 0; x < w.inputs(); ++x)
    for (int z = 0; z < w.outputs(); ++z)
      if (!t.kept(x, z)) d[static_cast<std::size_t>(x) * w.outputs() + z] = 0;
  return channels::DiscreteChannel::raw(w.inputs(), w.outputs(), std::move(d), true);
}

double renyi2_uniform_input(const channels::DiscreteChannel& w) {
  const int nx = w.inputs(), nz = w.outputs();
  double total = 0;
  for (int z = 0; z < nz; ++z) {
    double col = 0, sq = 0;
    for (int x = 0; x < nx; ++x) {
      const double v = w.at(x, z);
      col += v;
      sq += v * v;
    }
    if (col > 0) total += sq / (col / nx);
  }
  return std::log2(total / nx);
}

double max_information(const channels::DiscreteChannel& w) {
  double s = 0;
  for (int z = 0; z < w.outputs(); ++z) {
    double mx = 0;
    for (int x = 0; x < w.inputs(); ++x) mx = std::max(mx, w.at(x, z));
    s += mx;
  }
  return std::log2(s);
}

namespace {

struct Cell {
  double value;
  int x, z;
};

// All feasible trims by brute force over per-row output subsets.
template <typename Eval>
SmoothResult exhaustive_smooth(const channels::DiscreteChannel& w, double eps, Eval eval) {
  const int nx = w.inputs(), nz = w.outputs();
  if (static_cast<long>(nx) * nz > 24)
    throw std::invalid_argument("exhaustive smoothing gated to 24 matrix cells");

  // Per-row feasible keep masks.
  std::vector<std::vector<unsigned>> row_masks(nx);
  for (int x = 0; x < nx; ++x) {
    const double need = w.row_mass(x) - eps;
    for (unsigned mask = 0; mask < (1u << nz); ++mask) {
      double kept = 0;
      for (int z = 0; z < nz; ++z)
        if (mask & (1u << z)) kept += w.at(x, z);
      if (kept >= need - 1e-12) row_masks[x].push_back(mask);
    }
  }

  TrimSet best_trim(nx, nz);
  double best = eval(subnormalize(w, best_trim));
  std::vector<std::size_t> pick(nx, 0);
  while (true) {
    TrimSet t(nx, nz);
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z)
        if (!(row_masks[x][pick[x]] & (1u << z))) t.drop(x, z);
    const double v = eval(subnormalize(w, t));
    if (v < best) {
      best = v;
      best_trim = t;
    }
    int x = 0;
    while (x < nx && ++pick[x] == row_masks[x].size()) {
      pick[x] = 0;
      ++x;
    }
    if (x == nx) break;
  }
  return {best, best_trim};
}

}  // namespace

SmoothResult smooth_renyi2(const channels::DiscreteChannel& w, double eps,
                           SmoothStrategy strategy) {
  if (eps < 0 || eps >= 1) throw std::invalid_argument("epsilon must lie in [0, 1)");
  const int nx = w.inputs(), nz = w.outputs();
  if (strategy == SmoothStrategy::exhaustive)
    return exhaustive_smooth(w, eps, renyi2_uniform_input);

  // Greedy: per row, drop the ascending-density prefix that fits the budget.
  TrimSet trim(nx, nz);
  for (int x = 0; x < nx; ++x) {
    std::vector<std::pair<double, int>> row;
    row.reserve(nz);
    for (int z = 0; z < nz; ++z)
      if (w.at(x, z) > 0) row.emplace_back(w.at(x, z), z);
    std::sort(row.begin(), row.end());
    double dropped = 0;
    for (const auto& [v, z] : row) {
      if (dropped + v > eps) break;
      dropped += v;
      trim.drop(x, z);
    }
  }
  const double trimmed = renyi2_uniform_input(subnormalize(w, trim));
  const double untrimmed = renyi2_uniform_input(w);
  // Trimming can raise this divergence; the untrimmed set stays feasible.
  if (untrimmed <= trimmed) return {untrimmed, TrimSet(nx, nz)};
  return {trimmed, trim};
}

SmoothResult smooth_maxinfo(const channels::DiscreteChannel& w, double eps,
                            SmoothStrategy strategy) {
  if (eps < 0 || eps >= 1) throw std::invalid_argument("epsilon must lie in [0, 1)");
  const int nx = w.inputs(), nz = w.outputs();
  if (strategy == SmoothStrategy::exhaustive) return exhaustive_smooth(w, eps, max_information);

  TrimSet trim(nx, nz);
  std::vector<double> dropped(nx, 0.0);
  auto current = [&](int x, int z) { return trim.kept(x, z) ? w.at(x, z) : 0.0; };
  while (true) {
    // Smallest droppable entry that attains its column maximum.
    Cell pick{0, -1, -1};
    for (int z = 0; z < nz; ++z) {
      double mx = 0;
      for (int x = 0; x < nx; ++x) mx = std::max(mx, current(x, z));
      if (mx == 0) continue;
      for (int x = 0; x < nx; ++x) {
        if (current(x, z) != mx) continue;
        if (dropped[x] + mx > eps) continue;
        if (pick.x < 0 || mx < pick.value) pick = {mx, x, z};
      }
    }
    if (pick.x < 0) break;
    trim.drop(pick.x, pick.z);
    dropped[pick.x] += pick.value;
  }
  return {max_information(subnormalize(w, trim)), trim};
}

CapacityResult capacity_ba(const channels::DiscreteChannel& k, double tol, long max_iter) {
  if (k.subnormalized()) throw std::invalid_argument("capacity needs an ordinary channel");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  const int nm = k.inputs(), nz = k.outputs();
  std::vector<double> r(nm, 1.0 / nm);
  std::vector<double> d(nm);
  CapacityResult result{};
  for (long it = 1; it <= max_iter; ++it) {
    const auto q = channels::pushforward(r, k);
    double lower = 0, upper = -kInf;
    for (int m = 0; m < nm; ++m) {
      double dm = 0;
      for (int z = 0; z < nz; ++z) {
        const double v = k.at(m, z);
        if (v == 0) continue;
        dm += v * std::log2(v / q[z]);
      }
      d[m] = dm;
      lower += r[m] * dm;
      upper = std::max(upper, dm);
    }
    result.iterations = it;
    if (upper - lower < tol) {
      result.bits = std::max(0.0, lower);
      result.input_dist = r;
      return result;
    }
    double norm = 0;
    for (int m = 0; m < nm; ++m) {
      r[m] *= std::exp2(d[m]);
      norm += r[m];
    }
    for (int m = 0; m < nm; ++m) r[m] /= norm;
  }
  throw std::runtime_error("Blahut-Arimoto did not reach the requested gap");
}

}  // namespace briwt::infodiv
