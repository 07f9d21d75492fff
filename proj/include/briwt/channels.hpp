#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace briwt::channels {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row-stochastic (or subnormalized) matrix over finite alphabets; row index
// is the input symbol.
class DiscreteChannel {
 public:
  static DiscreteChannel from_matrix(const std::vector<std::vector<double>>& rows);
  static DiscreteChannel subnormalized_from_matrix(const std::vector<std::vector<double>>& rows);
  // No validation; internal fast path for computed densities.
  static DiscreteChannel raw(int inputs, int outputs, std::vector<double> density,
                             bool subnormalized);

  int inputs() const { return in_; }
  int outputs() const { return out_; }
  bool subnormalized() const { return subnormalized_; }
  double at(int input, int output) const {
    return w_[static_cast<std::size_t>(input) * out_ + output];
  }
  const std::vector<double>& density() const { return w_; }
  double row_mass(int input) const;

 private:
  DiscreteChannel(int in, int out, std::vector<double> w, bool subnorm)
      : in_(in), out_(out), subnormalized_(subnorm), w_(std::move(w)) {}
  int in_, out_;
  bool subnormalized_;
  std::vector<double> w_;
};

DiscreteChannel bsc(double p);  // 0 <= p <= 1/2
DiscreteChannel noiseless(int n_symbols);
// Embeds a function as a 0/1 channel.
DiscreteChannel deterministic(const std::vector<int>& map, int n_outputs);

DiscreteChannel concat(const DiscreteChannel& v, const DiscreteChannel& w);
// Blocklength-n product channel; refuses to materialize more than
// max_outputs output symbols or max_entries matrix entries.
DiscreteChannel memoryless_ext(const DiscreteChannel& w, int n,
                               long max_outputs = 1L << 20,
                               long max_entries = 1L << 24);
std::vector<double> pushforward(const std::vector<double>& p, const DiscreteChannel& w);

// I(P, W) in bits.
double mutual_information(const std::vector<double>& p, const DiscreteChannel& w);

// Deterministic maximizer of f over the probability simplex: composition
// grid of the given resolution followed by a local mass-shift refinement.
double simplex_maximize(int dim, const std::function<double(const std::vector<double>&)>& f,
                        int grid, std::vector<double>* argmax = nullptr);

// max_P I(P,T) - I(P,U) over a shared input alphabet; valid as the secrecy
// capacity when T is more capable than U.
double secrecy_capacity_more_capable(const DiscreteChannel& t, const DiscreteChannel& u,
                                     int grid = 64);

// Closed form for the Gaussian wiretap pair, evaluated exactly as printed in
// the source it comes from: the condition var_t >= var_u gates the value
// 0.5 log(1+gamma/var_t) - 0.5 log(1+gamma/var_u), which is nonpositive for
// var_t > var_u.  Callers expecting the conventional noisier-eavesdropper
// orientation must swap the variances themselves.
double gaussian_secrecy_capacity(double gamma, double var_t, double var_u);

double binary_entropy(double p);

// CSV layout: header "input,<z0>,<z1>,..."; one input per row with its label
// in the first column.
void write_csv(const DiscreteChannel& w, std::ostream& os);
DiscreteChannel read_csv(std::istream& is);

}  // namespace briwt::channels
