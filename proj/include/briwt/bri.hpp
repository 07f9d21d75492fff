#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "briwt/channels.hpp"
#include "briwt/graphs.hpp"
#include "briwt/spectra.hpp"

namespace briwt::bri {

// Seeded function f: S x X -> N with a declared regularity set and degrees.
// Evaluation is delegated so that table-backed and algebraically-backed
// functions share all certification and coding paths.
class BriFunction {
 public:
  BriFunction(int s_count, int x_count, int n_count, int d_s, int d_x,
              std::vector<int> regularity, std::function<int(int, int)> eval);

  int s_count() const { return s_count_; }
  int x_count() const { return x_count_; }
  int n_count() const { return n_count_; }
  int d_s() const { return d_s_; }
  int d_x() const { return d_x_; }
  const std::vector<int>& regularity() const { return regularity_; }
  bool in_regularity(int m) const;
  int operator()(int s, int x) const { return eval_(s, x); }

 private:
  int s_count_, x_count_, n_count_, d_s_, d_x_;
  std::vector<int> regularity_;  // sorted
  std::function<int(int, int)> eval_;
};

// Dense (s-major) table with declared metadata.
BriFunction table_bri(int s_count, int x_count, int n_count, int d_s, int d_x,
                      std::vector<int> regularity, std::vector<int> table);

std::vector<int> preimage(const BriFunction& f, int s, int m);

// Collision matrix over X for one message: entry (x,x') counts the seeds
// mapping both inputs to m, scaled by 1/(d_s d_x).
spectra::SymMatrix pfm_matrix(const BriFunction& f, int m);

// Second-largest eigenvalue modulus of the collision matrix, cross-checked
// against the squared graph eigenvalue route within 1e-8.
double lambda2(const BriFunction& f, int m);

// Uniform draw from {x : f(s,x) = m}.
int randomized_inverse(const BriFunction& f, int s, int m, std::mt19937_64& rng);
// Channel S -> X with density 1/d_s on the preimage of m per seed.
channels::DiscreteChannel qfm_channel(const BriFunction& f, int m);

// Bipartite graph of one message class.
graphs::BipartiteGraph message_graph(const BriFunction& f, int m);

// labels[i] is the output value attached to graphs[i]; the graphs must be
// pairwise edge-disjoint with union the complete bipartite graph.
BriFunction bri_from_graph_family(const std::vector<graphs::BipartiteGraph>& family,
                                  const std::vector<int>& labels);
std::vector<graphs::BipartiteGraph> graph_family_of(const BriFunction& f);

struct MessageRecord {
  int m;
  bool s_regular;
  bool x_regular;
  std::optional<int> bad_seed;   // witness when S-regularity fails
  std::optional<int> bad_input;  // witness when X-regularity fails
  double lambda2;                // NaN when regularity fails
  bool connected;
  bool irreducible;  // lambda2 <= 1 - 1e-7
  bool pass() const { return s_regular && x_regular && irreducible; }
};

struct BriCertificate {
  std::vector<MessageRecord> messages;
  bool double_counting_ok;  // d_x |X| == d_s |S|
  bool m_card_ok;           // |M| <= |X| / d_s
  bool seed_size_ok;        // |S| >= d_x |M|
  double uhf_value;         // (d_s-1)/(|X|-1) when the identity holds
  bool uhf_ok;
  bool qualif_ok;  // |{s : f(s,x) in M}| == |M| d_x for every x
  bool valid() const;
};

// Full certificate; failures are recorded, never thrown.
BriCertificate verify_bri(const BriFunction& f);

// Average conditional collision probability for a fixed input; equals
// (d_s-1)/(|X|-1) for every certified function and is independent of the
// fixed input.
double uhf_average_check(const BriFunction& f, int fixed_x = 0);

void write_table(const BriFunction& f, std::ostream& os);
BriFunction read_table(std::istream& is);

}  // namespace briwt::bri
