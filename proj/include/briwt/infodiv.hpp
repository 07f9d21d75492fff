#pragma once

#include <cstdint>
#include <vector>

#include "briwt/channels.hpp"

namespace briwt::infodiv {

// Densities of (sub)normalized measures over a finite set are plain vectors;
// all divergences are in bits and follow the subnormalized conventions, with
// +infinity when absolute continuity fails on the support.
using Density = std::vector<double>;

double mass(const Density& m);
double kl(const Density& m1, const Density& m2);
double renyi2(const Density& m1, const Density& m2);
double tv(const Density& m1, const Density& m2);

// Conditional forms against a fixed reference measure, weighted by a
// probability distribution on the input alphabet.
double cond_kl(const channels::DiscreteChannel& w, const Density& m, const Density& p);
double cond_renyi2(const channels::DiscreteChannel& w, const Density& m, const Density& p);

struct DivIneqReport {
  int samples = 0;
  int failures = 0;
  double worst_slack = 0;  // most negative margin observed
  bool all_pass() const { return failures == 0; }
};

// Random subnormalized instances of the mass-weighted KL-vs-Renyi bound and
// its conditional epsilon form.
DivIneqReport check_div_inequalities(int n_samples, std::uint64_t seed);

// Kept (input, output) cells of a trimming.
class TrimSet {
 public:
  TrimSet(int inputs, int outputs, bool keep_all = true);
  int inputs() const { return in_; }
  int outputs() const { return out_; }
  bool kept(int x, int z) const { return keep_[static_cast<std::size_t>(x) * out_ + z] != 0; }
  void drop(int x, int z) { keep_[static_cast<std::size_t>(x) * out_ + z] = 0; }
  void restore(int x, int z) { keep_[static_cast<std::size_t>(x) * out_ + z] = 1; }
  long dropped_count() const;

 private:
  int in_, out_;
  std::vector<std::uint8_t> keep_;
};

channels::DiscreteChannel subnormalize(const channels::DiscreteChannel& w, const TrimSet& t);

// D2(W || P_X W | P_X) with the uniform input distribution; accepts
// subnormalized channels.
double renyi2_uniform_input(const channels::DiscreteChannel& w);
// log integral of the column maxima.
double max_information(const channels::DiscreteChannel& w);

enum class SmoothStrategy { greedy, exhaustive };

struct SmoothResult {
  double value;
  TrimSet trim;
};

// Feasible trims keep at least 1-eps of every row.  Greedy drops the
// smallest-density outputs per row within the budget and falls back to the
// untrimmed channel when trimming does not lower the divergence; exhaustive
// returns the true minimum and is gated to |X| * |Z| <= 24.
SmoothResult smooth_renyi2(const channels::DiscreteChannel& w, double eps,
                           SmoothStrategy strategy = SmoothStrategy::greedy);
// Same contract for the max-information; greedy only drops entries that
// attain a column maximum, smallest mass first.
SmoothResult smooth_maxinfo(const channels::DiscreteChannel& w, double eps,
                            SmoothStrategy strategy = SmoothStrategy::greedy);

struct CapacityResult {
  double bits;
  std::vector<double> input_dist;
  long iterations;
};

// Blahut-Arimoto, iterated until the standard upper/lower capacity gap is
// below tol.
CapacityResult capacity_ba(const channels::DiscreteChannel& k, double tol = 1e-9,
                           long max_iter = 2000000);

}  // namespace briwt::infodiv
