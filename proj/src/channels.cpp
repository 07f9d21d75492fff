#include "briwt/channels.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace briwt::channels {

namespace {

constexpr double kRowSumTol = 1e-12;

std::vector<double> flatten(const std::vector<std::vector<double>>& rows, int& in, int& out) {
  in = static_cast<int>(rows.size());
  if (in == 0) throw std::invalid_argument("channel needs at least one input");
  out = static_cast<int>(rows[0].size());
  if (out == 0) throw std::invalid_argument("channel needs at least one output");
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(in) * out);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != out) throw std::invalid_argument("ragged channel rows");
    for (double v : r) {
      if (!(v >= 0)) throw std::invalid_argument("negative channel density");
      w.push_back(v);
    }
  }
  return w;
}

}  // namespace

DiscreteChannel DiscreteChannel::from_matrix(const std::vector<std::vector<double>>& rows) {
  int in, out;
  auto w = flatten(rows, in, out);
  DiscreteChannel c(in, out, std::move(w), false);
  for (int x = 0; x < in; ++x) {
    if (std::fabs(c.row_mass(x) - 1.0) > kRowSumTol)
      throw std::invalid_argument("row of an ordinary channel does not sum to 1");
  }
  return c;
}

DiscreteChannel DiscreteChannel::subnormalized_from_matrix(
    const std::vector<std::vector<double>>& rows) {
  int in, out;
  auto w = flatten(rows, in, out);
  DiscreteChannel c(in, out, std::move(w), true);
  for (int x = 0; x < in; ++x) {
    const double m = c.row_mass(x);
    if (m <= 0 || m > 1 + kRowSumTol)
      throw std::invalid_argument("subnormalized row mass must lie in (0, 1]");
  }
  return c;
}

DiscreteChannel DiscreteChannel::raw(int inputs, int outputs, std::vector<double> density,
                                     bool subnormalized) {
  if (density.size() != static_cast<std::size_t>(inputs) * outputs)
    throw std::invalid_argument("density size mismatch");
  return DiscreteChannel(inputs, outputs, std::move(density), subnormalized);
}

double DiscreteChannel::row_mass(int input) const {
  double s = 0;
  for (int z = 0; z < out_; ++z) s += at(input, z);
  return s;
}

DiscreteChannel bsc(double p) {
  if (!(p >= 0 && p <= 0.5)) throw std::invalid_argument("flip probability must be in [0, 1/2]");
  return DiscreteChannel::from_matrix({{1 - p, p}, {p, 1 - p}});
}

DiscreteChannel noiseless(int n_symbols) {
  std::vector<std::vector<double>> rows(n_symbols, std::vector<double>(n_symbols, 0.0));
  for (int i = 0; i < n_symbols; ++i) rows[i][i] = 1.0;
  return DiscreteChannel::from_matrix(rows);
}

DiscreteChannel deterministic(const std::vector<int>& map, int n_outputs) {
  std::vector<std::vector<double>> rows(map.size(), std::vector<double>(n_outputs, 0.0));
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (map[x] < 0 || map[x] >= n_outputs) throw std::invalid_argument("map value out of range");
    rows[x][map[x]] = 1.0;
  }
  return DiscreteChannel::from_matrix(rows);
}

DiscreteChannel concat(const DiscreteChannel& v, const DiscreteChannel& w) {
  if (v.outputs() != w.inputs())
    throw std::invalid_argument("alphabet mismatch in channel concatenation");
  std::vector<double> u(static_cast<std::size_t>(v.inputs()) * w.outputs(), 0.0);
  for (int x = 0; x < v.inputs(); ++x)
    for (int y = 0; y < v.outputs(); ++y) {
      const double vy = v.at(x, y);
      if (vy == 0) continue;
      for (int z = 0; z < w.outputs(); ++z)
        u[static_cast<std::size_t>(x) * w.outputs() + z] += vy * w.at(y, z);
    }
  return DiscreteChannel::raw(v.inputs(), w.outputs(), std::move(u),
                              v.subnormalized() || w.subnormalized());
}

DiscreteChannel memoryless_ext(const DiscreteChannel& w, int n, long max_outputs,
                               long max_entries) {
  if (n < 1) throw std::invalid_argument("blocklength must be positive");
  double out_pow = std::pow(static_cast<double>(w.outputs()), n);
  double in_pow = std::pow(static_cast<double>(w.inputs()), n);
  if (out_pow > static_cast<double>(max_outputs))
    throw BudgetError("memoryless extension exceeds the output budget of " +
                      std::to_string(max_outputs) + " symbols");
  if (in_pow * out_pow > static_cast<double>(max_entries))
    throw BudgetError("memoryless extension exceeds work budget of " +
                      std::to_string(max_entries) + " matrix entries");
  const long n_in = static_cast<long>(in_pow);
  const long n_out = static_cast<long>(out_pow);
  std::vector<double> u(static_cast<std::size_t>(n_in) * n_out, 1.0);
  // Symbol i of a block word is digit i of its index in base |alphabet|,
  // least significant digit first.
  for (long a = 0; a < n_in; ++a) {
    for (long z = 0; z < n_out; ++z) {
      double prod = 1.0;
      long ar = a, zr = z;
      for (int i = 0; i < n; ++i) {
        prod *= w.at(static_cast<int>(ar % w.inputs()), static_cast<int>(zr % w.outputs()));
        ar /= w.inputs();
        zr /= w.outputs();
      }
      u[static_cast<std::size_t>(a) * n_out + z] = prod;
    }
  }
  return DiscreteChannel::raw(static_cast<int>(n_in), static_cast<int>(n_out), std::move(u),
                              w.subnormalized());
}

std::vector<double> pushforward(const std::vector<double>& p, const DiscreteChannel& w) {
  if (static_cast<int>(p.size()) != w.inputs())
    throw std::invalid_argument("distribution does not match the input alphabet");
  std::vector<double> q(w.outputs(), 0.0);
  for (int x = 0; x < w.inputs(); ++x) {
    if (p[x] == 0) continue;
    for (int z = 0; z < w.outputs(); ++z) q[z] += p[x] * w.at(x, z);
  }
  return q;
}

double mutual_information(const std::vector<double>& p, const DiscreteChannel& w) {
  const auto q = pushforward(p, w);
  double i = 0;
  for (int x = 0; x < w.inputs(); ++x) {
    if (p[x] == 0) continue;
    for (int z = 0; z < w.outputs(); ++z) {
      const double v = w.at(x, z);
      if (v == 0) continue;
      i += p[x] * v * std::log2(v / q[z]);
    }
  }
  return i;
}

double simplex_maximize(int dim, const std::function<double(const std::vector<double>&)>& f,
                        int grid, std::vector<double>* argmax) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (grid < 1) throw std::invalid_argument("grid resolution must be positive");
  std::vector<double> best_p(dim, 1.0 / dim);
  double best = f(best_p);

  // Enumerate all compositions of `grid` into `dim` cells.
  std::vector<int> comp(dim, 0);
  comp[0] = grid;
  std::vector<double> p(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) p[i] = static_cast<double>(comp[i]) / grid;
    const double v = f(p);
    if (v > best) {
      best = v;
      best_p = p;
    }
    // Next composition in colex order.
    int i = 0;
    while (i < dim - 1 && comp[i] == 0) ++i;
    if (i == dim - 1) break;
    const int head = comp[i];
    comp[i] = 0;
    comp[0] = head - 1;
    ++comp[i + 1];
  }

  // Local refinement: move probability mass between coordinate pairs with a
  // shrinking step.
  double step = 1.0 / grid;
  while (step > 1e-10) {
    bool improved = false;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j || best_p[i] < step) continue;
        p = best_p;
        p[i] -= step;
        p[j] += step;
        const double v = f(p);
        if (v > best + 1e-15) {
          best = v;
          best_p = p;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2;
  }
  if (argmax) *argmax = best_p;
  return best;
}

double secrecy_capacity_more_capable(const DiscreteChannel& t, const DiscreteChannel& u,
                                     int grid) {
  if (t.inputs() != u.inputs())
    throw std::invalid_argument("wiretap pair must share the input alphabet");
  if (grid < 64) throw std::invalid_argument("grid resolution must be at least 64");
  const auto objective = [&](const std::vector<double>& p) {
    return mutual_information(p, t) - mutual_information(p, u);
  };
  const double v = simplex_maximize(t.inputs(), objective, grid);
  return std::max(0.0, v);
}

double gaussian_secrecy_capacity(double gamma, double var_t, double var_u) {
  if (gamma < 0 || var_t <= 0 || var_u <= 0)
    throw std::invalid_argument("power must be nonnegative and variances positive");
  if (var_t >= var_u)
    return 0.5 * std::log2(1 + gamma / var_t) - 0.5 * std::log2(1 + gamma / var_u);
  return 0.0;
}

double binary_entropy(double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("probability out of range");
  if (p == 0 || p == 1) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

void write_csv(const DiscreteChannel& w, std::ostream& os) {
  os << "input";
  for (int z = 0; z < w.outputs(); ++z) os << ",z" << z;
  os << '\n';
  os.precision(17);
  for (int x = 0; x < w.inputs(); ++x) {
    os << 'x' << x;
    for (int z = 0; z < w.outputs(); ++z) os << ',' << w.at(x, z);
    os << '\n';
  }
}

DiscreteChannel read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty channel CSV");
  int n_out = -1;  // count header fields
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) ++n_out;
  }
  if (n_out < 1) throw std::runtime_error("channel CSV header has no output columns");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    if (!std::getline(ss, field, ',')) throw std::runtime_error("malformed channel CSV row");
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric value in channel CSV");
      }
    }
    if (static_cast<int>(row.size()) != n_out)
      throw std::runtime_error("channel CSV row width does not match header");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("channel CSV has no data rows");
  return DiscreteChannel::from_matrix(rows);
}

}  // namespace briwt::channels
