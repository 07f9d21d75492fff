#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "briwt/spectra.hpp"

namespace briwt::graphs {

// Bipartite graph stored as a 0/1 biadjacency matrix; rows are the S part,
// columns the X part.
class BipartiteGraph {
 public:
  BipartiteGraph(int s_size, int x_size);
  static BipartiteGraph complete(int s_size, int x_size);

  int s_size() const { return s_; }
  int x_size() const { return x_; }
  bool edge(int s, int x) const { return b_[static_cast<std::size_t>(s) * x_ + x] != 0; }
  void set_edge(int s, int x, bool present);
  long edge_count() const;
  // Edges in row-major (s, x) order.
  std::vector<std::pair<int, int>> edges() const;

  // (s+x) x (s+x) adjacency matrix with the S block first.
  spectra::SymMatrix adjacency() const;

  bool operator==(const BipartiteGraph& o) const = default;

 private:
  int s_, x_;
  std::vector<std::uint8_t> b_;
};

struct Degrees {
  int d_s;  // degree of every S vertex
  int d_x;  // degree of every X vertex
};

std::optional<Degrees> is_biregular(const BipartiteGraph& g);
bool is_connected(const BipartiteGraph& g);
// Diameter via all-pairs BFS; nullopt when disconnected.
std::optional<int> diameter(const BipartiteGraph& g);

// Every adjacency eigenvalue is either +-sqrt(d_s d_x) or bounded in modulus
// by sqrt(d_s-1)+sqrt(d_x-1), within tol.
bool is_ramanujan(const BipartiteGraph& g, int d_s, int d_x, double tol = 1e-9);

// +-1 labels on the edges of one bipartite graph; 0 marks a non-edge.
class Signing {
 public:
  Signing(const BipartiteGraph& g, const std::vector<int>& edge_signs);
  static Signing all_plus(const BipartiteGraph& g);

  int s_size() const { return s_; }
  int x_size() const { return x_; }
  int sign(int s, int x) const { return v_[static_cast<std::size_t>(s) * x_ + x]; }
  Signing negated() const;
  bool matches_edges(const BipartiteGraph& g) const;

 private:
  Signing(int s, int x) : s_(s), x_(x), v_(static_cast<std::size_t>(s) * x, 0) {}
  int s_, x_;
  std::vector<std::int8_t> v_;
};

BipartiteGraph two_lift(const BipartiteGraph& g, const Signing& s);
// Biadjacency of the signed graph as a dense matrix (S rows, X columns).
std::vector<std::vector<double>> signed_biadjacency(const BipartiteGraph& g, const Signing& s);

struct SearchExhausted : std::runtime_error {
  SearchExhausted(const std::string& what, long tries_done, int level_index = -1)
      : std::runtime_error(what), tries(tries_done), level(level_index) {}
  long tries;
  int level;  // decomposition level when applicable, else -1
};

enum class SearchStrategy { exhaustive, randomized };

// Finds a signing whose 2-lift is connected, biregular and Ramanujan.
// Exhaustive mode scans signings in lexicographic order (all-plus first,
// at most 24 edges) and returns the first certified hit; randomized mode
// samples uniformly with the given seed.
Signing find_ramanujan_signing(const BipartiteGraph& g, SearchStrategy strategy,
                               std::uint64_t rng_seed = 0, long max_tries = 200000);

// 2^k pairwise edge-disjoint connected (d_s,d_x)-biregular Ramanujan graphs
// whose union is the complete bipartite graph on parts of size 2^k d_x and
// 2^k d_s.  Built by repeated signed 2-lifts from the complete base graph.
std::vector<BipartiteGraph> ramanujan_decomposition(int d_s, int d_x, int k,
                                                    std::uint64_t rng_seed = 0,
                                                    long max_tries = 200000);

struct FengLiReport {
  bool applicable;  // diameter >= 8
  bool holds;
  int diam;
  double lambda2;      // second-largest adjacency eigenvalue
  double lower_bound;  // bound on lambda2^2 when applicable
};

FengLiReport feng_li_check(const BipartiteGraph& g);

void write_edge_list(const BipartiteGraph& g, std::ostream& os);
BipartiteGraph read_edge_list(std::istream& is);

}  // namespace briwt::graphs
