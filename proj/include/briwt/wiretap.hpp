#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "briwt/bri.hpp"
#include "briwt/channels.hpp"
#include "briwt/infodiv.hpp"

namespace briwt::wiretap {

// Seeded modular scheme: a security function in front of an error-correcting
// code (phi, psi).  The seeded encoder xi(a|s,m) mixes phi over the
// randomized inverse of f; the seeded decoder applies f after psi.
class WiretapScheme {
 public:
  WiretapScheme(bri::BriFunction f, channels::DiscreteChannel phi, std::vector<int> psi);

  const bri::BriFunction& f() const { return f_; }
  const channels::DiscreteChannel& phi() const { return phi_; }
  const std::vector<int>& psi() const { return psi_; }
  int message_count() const { return static_cast<int>(f_.regularity().size()); }
  int message_value(int pos) const { return f_.regularity()[pos]; }

  // Rows indexed by s * |M| + message position.
  const channels::DiscreteChannel& xi() const { return xi_; }
  int decode(int s, int y) const;  // value in N

 private:
  bri::BriFunction f_;
  channels::DiscreteChannel phi_;
  std::vector<int> psi_;
  channels::DiscreteChannel xi_;
};

WiretapScheme scheme_build(bri::BriFunction f, channels::DiscreteChannel phi,
                           std::vector<int> psi);

// Maximal error over seeds and messages, by exact matrix sums.
double error_probability_exact(const WiretapScheme& sch, const channels::DiscreteChannel& t);

struct McEstimate {
  double estimate;
  double wilson_low;
  double wilson_high;
  long samples;
};
McEstimate error_probability_mc(const WiretapScheme& sch, const channels::DiscreteChannel& t,
                                long samples_per_pair, std::uint64_t seed);

// D(Q_{f,m} W || P_X W | P_S) for an explicit channel W on X.
double divergence_vs_uniform(const bri::BriFunction& f, const channels::DiscreteChannel& w,
                             int m);

// Same divergence for W = phi followed by the eavesdropper channel.
double leakage_per_message(const WiretapScheme& sch, const channels::DiscreteChannel& u, int m);

// Eigenvalue-separated leakage bound:
// lambda2/ln2 * 2^d2eps + eps log(|X|/d_s) - (1-eps) log(1-eps).
double theorem_bound(double lambda2, double d2eps, double eps, int x_count, int d_s);

// Bound for one message at the given smoothing parameter; checks that the
// exact divergence stays below it.  Requires 0 < eps < 1 - 1/e.
double ev_ub_bound(const WiretapScheme& sch, const channels::DiscreteChannel& u, int m,
                   double eps, infodiv::SmoothStrategy strategy = infodiv::SmoothStrategy::greedy);

struct SweepResult {
  double eps;
  double bound;
};
// Best bound over the default sweep {0.3, 0.1, 0.05, 0.01}.
SweepResult ev_ub_bound_sweep(const WiretapScheme& sch, const channels::DiscreteChannel& u,
                              int m);

struct ExactLeakage {
  double l_sem;
  double l_str;
  long ba_iterations;
};
// L_sem as the capacity of the channel from messages to (seed, observation)
// pairs, L_str as the same mutual information at the uniform message
// distribution.  Gated by a joint-entry budget.
ExactLeakage leakage_exact(const WiretapScheme& sch, const channels::DiscreteChannel& u,
                           long budget = 1L << 22, double ba_tol = 1e-9);

// Plug-in estimate of L_str from sampled (message, seed, observation)
// triples; clearly an estimate, for instances over the exact budget.
McEstimate leakage_str_mc(const WiretapScheme& sch, const channels::DiscreteChannel& u,
                          long samples, std::uint64_t seed);

// Ordinary code transmitting the seed once and reusing it for n_blocks
// message blocks.  The seed set must embed into X.
class SeedReuseCode {
 public:
  SeedReuseCode(const WiretapScheme& sch, int n_blocks);

  int n_blocks() const { return n_; }
  const WiretapScheme& scheme() const { return *sch_; }
  long message_words() const;  // |M|^N

  // Channel from message words to (N+1)-block eavesdropper output words.
  channels::DiscreteChannel eavesdropper_channel(const channels::DiscreteChannel& u,
                                                 long budget = 1L << 22) const;
  double error_exact(const channels::DiscreteChannel& t) const;
  ExactLeakage leakage(const channels::DiscreteChannel& u, long budget = 1L << 22,
                       double ba_tol = 1e-9) const;

 private:
  const WiretapScheme* sch_;
  int n_;
};

struct SeedReuseBounds {
  double rate_factor;  // N/(N+1)
  double err_bound;    // e(phi,psi) + N e(scheme)
  double leak_bound;   // N L_sem(scheme)
};
SeedReuseBounds seed_reuse_bounds(const WiretapScheme& sch, const channels::DiscreteChannel& t,
                                  const channels::DiscreteChannel& u, int n_blocks,
                                  long budget = 1L << 22);

// Error probability of the error-correcting code alone.
double ecc_error(const channels::DiscreteChannel& phi, const std::vector<int>& psi,
                 const channels::DiscreteChannel& t);

struct ExpurgationReport {
  std::vector<int> kept;  // selected message indices, ascending
  std::vector<double> tv_to_average;
  double l_str_tv_original;
  double l_sem_tv_restricted;
  bool factor4_ok;
  double eta;  // strong-secrecy leakage entering the final bound
  double l_sem_restricted;
  double sem_bound;  // -6 sqrt(eta) log(6 sqrt(eta) / |M'|)
  bool sem_bound_ok;
  bool in_regime;  // 6 sqrt(eta) small enough for the bound chain to bind
};

// Keeps the ceil(|M|/2) messages with the smallest total-variation distance
// to the average output and verifies the restriction bounds.  xi_u holds one
// row per (seed, message) pair, seed-major.
ExpurgationReport expurgate(const channels::DiscreteChannel& xi_u, int s_count, int m_count,
                            std::optional<double> eta = std::nullopt);

struct BriPlan {
  int n;
  long k;
  long long d;
  bool d_clamped;  // raised to the minimum degree 3
  unsigned long long x_size;
  unsigned long long m_size;
  double lambda2_cap;  // 4(d-1)/d^2 at equal degrees
};
BriPlan plan_bri_sequence(double r, double t, int n);

struct TrendRow {
  int n;
  std::string construction;  // "decomposition" or "coset"
  long long x_size;
  long long m_size;
  double rate;  // log2 |M| / n
  double lambda2_max;
  double d2eps;
  double eps;
  double bound;
};

struct TrendResult {
  std::vector<TrendRow> rows;
  double eavesdropper_capacity;
  bool hypothesis;  // t * r exceeds the eavesdropper capacity
  bool strictly_decreasing;
};

struct TrendConfig {
  double r = 1.0;
  double t = 0.5;
  std::vector<int> n_list;
  double eps_exponent = 0.25;  // eps_n = 2^{-eps_exponent * n}
  int max_decomp_vertices = 64;
  int max_coset_ell = 12;
  std::uint64_t seed = 0;
  long budget = 1L << 22;
};

// Builds the planned security function per blocklength (small decompositions
// when they fit, the coset construction otherwise), computes the leakage
// bound against the eavesdropper channel and checks monotone decrease when
// the rate hypothesis holds.  The main channel must be noiseless.
TrendResult trend_experiment(const channels::DiscreteChannel& t_main,
                             const channels::DiscreteChannel& u, const TrendConfig& cfg);

struct MessageLeakage {
  int m;
  double divergence;
  double bound;
  double eps;
};

struct LeakageReport {
  std::vector<MessageLeakage> per_message;
  double max_bound;
  bool exact;  // false when the strong-secrecy value is a sampled estimate
  double l_sem;
  double l_str;
  std::optional<double> error;
  bool ordering_ok;  // l_str <= l_sem <= max bound within slack
};

LeakageReport make_leakage_report(const WiretapScheme& sch,
                                  const std::optional<channels::DiscreteChannel>& t,
                                  const channels::DiscreteChannel& u,
                                  const std::vector<double>& eps_list, long budget,
                                  long mc_samples, std::uint64_t seed);

}  // namespace briwt::wiretap
