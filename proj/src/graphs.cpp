#include "briwt/graphs.hpp"

#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace briwt::graphs {

BipartiteGraph::BipartiteGraph(int s_size, int x_size) : s_(s_size), x_(x_size) {
  if (s_size < 1 || x_size < 1) throw std::invalid_argument("part sizes must be positive");
  if (s_size + x_size > 4096) throw std::invalid_argument("graph exceeds the spectral size cap");
  b_.assign(static_cast<std::size_t>(s_size) * x_size, 0);
}

BipartiteGraph BipartiteGraph::complete(int s_size, int x_size) {
  BipartiteGraph g(s_size, x_size);
  std::fill(g.b_.begin(), g.b_.end(), std::uint8_t{1});
  return g;
}

void BipartiteGraph::set_edge(int s, int x, bool present) {
  if (s < 0 || s >= s_ || x < 0 || x >= x_) throw std::out_of_range("edge index out of range");
  b_[static_cast<std::size_t>(s) * x_ + x] = present ? 1 : 0;
}

long BipartiteGraph::edge_count() const {
  long c = 0;
  for (auto v : b_) c += v;
  return c;
}

std::vector<std::pair<int, int>> BipartiteGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  e.reserve(static_cast<std::size_t>(edge_count()));
  for (int s = 0; s < s_; ++s)
    for (int x = 0; x < x_; ++x)
      if (edge(s, x)) e.emplace_back(s, x);
  return e;
}

spectra::SymMatrix BipartiteGraph::adjacency() const {
  spectra::SymMatrix a(s_ + x_);
  for (int s = 0; s < s_; ++s)
    for (int x = 0; x < x_; ++x)
      if (edge(s, x)) a.set(s, s_ + x, 1.0);
  return a;
}

std::optional<Degrees> is_biregular(const BipartiteGraph& g) {
  int ds = -1, dx = -1;
  for (int s = 0; s < g.s_size(); ++s) {
    int deg = 0;
    for (int x = 0; x < g.x_size(); ++x) deg += g.edge(s, x);
    if (ds < 0) ds = deg;
    if (deg != ds) return std::nullopt;
  }
  for (int x = 0; x < g.x_size(); ++x) {
    int deg = 0;
    for (int s = 0; s < g.s_size(); ++s) deg += g.edge(s, x);
    if (dx < 0) dx = deg;
    if (deg != dx) return std::nullopt;
  }
  return Degrees{ds, dx};
}

namespace {

// BFS distances over the union vertex set; S vertices come first.
std::vector<int> bfs_distances(const BipartiteGraph& g, int start) {
  const int n = g.s_size() + g.x_size();
  std::vector<int> dist(n, -1);
  std::deque<int> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v < g.s_size()) {
      for (int x = 0; x < g.x_size(); ++x)
        if (g.edge(v, x) && dist[g.s_size() + x] < 0) {
          dist[g.s_size() + x] = dist[v] + 1;
          queue.push_back(g.s_size() + x);
        }
    } else {
      const int x = v - g.s_size();
      for (int s = 0; s < g.s_size(); ++s)
        if (g.edge(s, x) && dist[s] < 0) {
          dist[s] = dist[v] + 1;
          queue.push_back(s);
        }
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const BipartiteGraph& g) {
  const auto dist = bfs_distances(g, 0);
  for (int d : dist)
    if (d < 0) return false;
  return true;
}

std::optional<int> diameter(const BipartiteGraph& g) {
  const int n = g.s_size() + g.x_size();
  int diam = 0;
  for (int v = 0; v < n; ++v) {
    const auto dist = bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) return std::nullopt;
      diam = std::max(diam, d);
    }
  }
  if (const auto deg = is_biregular(g); deg && deg->d_s >= 2 && deg->d_x >= 2) {
    const double lb = std::log(static_cast<double>(n)) /
                      (std::log(static_cast<double>(deg->d_s)) +
                       std::log(static_cast<double>(deg->d_x)));
    if (diam + 1e-9 < lb) throw std::logic_error("diameter below its counting lower bound");
  }
  return diam;
}

bool is_ramanujan(const BipartiteGraph& g, int d_s, int d_x, double tol) {
  const auto deg = is_biregular(g);
  if (!deg || deg->d_s != d_s || deg->d_x != d_x)
    throw std::invalid_argument("graph is not biregular with the declared degrees");
  if (!is_connected(g)) throw std::invalid_argument("graph is not connected");
  const double trivial = std::sqrt(static_cast<double>(d_s) * d_x);
  const double threshold = std::sqrt(d_s - 1.0) + std::sqrt(d_x - 1.0);
  for (double mu : spectra::sym_eigenvalues(g.adjacency())) {
    if (std::fabs(std::fabs(mu) - trivial) <= tol) continue;
    if (std::fabs(mu) > threshold + tol) return false;
  }
  return true;
}

Signing::Signing(const BipartiteGraph& g, const std::vector<int>& edge_signs)
    : Signing(g.s_size(), g.x_size()) {
  const auto e = g.edges();
  if (edge_signs.size() != e.size())
    throw std::invalid_argument("signing size does not match the edge count");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (edge_signs[i] != 1 && edge_signs[i] != -1)
      throw std::invalid_argument("signs must be +-1");
    v_[static_cast<std::size_t>(e[i].first) * x_ + e[i].second] =
        static_cast<std::int8_t>(edge_signs[i]);
  }
}

Signing Signing::all_plus(const BipartiteGraph& g) {
  return Signing(g, std::vector<int>(static_cast<std::size_t>(g.edge_count()), 1));
}

Signing Signing::negated() const {
  Signing out(s_, x_);
  for (std::size_t i = 0; i < v_.size(); ++i) out.v_[i] = static_cast<std::int8_t>(-v_[i]);
  return out;
}

bool Signing::matches_edges(const BipartiteGraph& g) const {
  if (g.s_size() != s_ || g.x_size() != x_) return false;
  for (int s = 0; s < s_; ++s)
    for (int x = 0; x < x_; ++x)
      if ((sign(s, x) != 0) != g.edge(s, x)) return false;
  return true;
}

BipartiteGraph two_lift(const BipartiteGraph& g, const Signing& s) {
  if (!s.matches_edges(g)) throw std::invalid_argument("signing domain does not match the edge set");
  BipartiteGraph lift(2 * g.s_size(), 2 * g.x_size());
  for (int u = 0; u < g.s_size(); ++u) {
    for (int x = 0; x < g.x_size(); ++x) {
      if (!g.edge(u, x)) continue;
      if (s.sign(u, x) > 0) {
        lift.set_edge(u, x, true);
        lift.set_edge(u + g.s_size(), x + g.x_size(), true);
      } else {
        lift.set_edge(u, x + g.x_size(), true);
        lift.set_edge(u + g.s_size(), x, true);
      }
    }
  }
  return lift;
}

std::vector<std::vector<double>> signed_biadjacency(const BipartiteGraph& g, const Signing& s) {
  if (!s.matches_edges(g)) throw std::invalid_argument("signing domain does not match the edge set");
  std::vector<std::vector<double>> b(g.s_size(), std::vector<double>(g.x_size(), 0.0));
  for (int u = 0; u < g.s_size(); ++u)
    for (int x = 0; x < g.x_size(); ++x)
      if (g.edge(u, x)) b[u][x] = s.sign(u, x);
  return b;
}

namespace {

// Largest singular value of the signed biadjacency, via the smaller Gram
// matrix.  By the lift spectrum decomposition these are exactly the
// eigenvalue moduli the lift adds to the parent spectrum.
double max_new_eigenvalue(const BipartiteGraph& g, const Signing& s) {
  const auto b = signed_biadjacency(g, s);
  const int ns = g.s_size(), nx = g.x_size();
  const int n = std::min(ns, nx);
  spectra::SymMatrix gram(n);
  if (ns <= nx) {
    for (int i = 0; i < ns; ++i)
      for (int j = i; j < ns; ++j) {
        double v = 0;
        for (int x = 0; x < nx; ++x) v += b[i][x] * b[j][x];
        gram.set(i, j, v);
      }
  } else {
    for (int i = 0; i < nx; ++i)
      for (int j = i; j < nx; ++j) {
        double v = 0;
        for (int u = 0; u < ns; ++u) v += b[u][i] * b[u][j];
        gram.set(i, j, v);
      }
  }
  const auto eigs = spectra::sym_eigenvalues(gram, 1e-10);
  return std::sqrt(std::max(0.0, eigs[0]));
}

// Full certificate for one lift: biregular, connected (by BFS and by
// simplicity of the +-sqrt(d_s d_x) eigenvalues; disagreement is an internal
// error) and Ramanujan.
bool certify_lift(const BipartiteGraph& lift, int d_s, int d_x) {
  const auto deg = is_biregular(lift);
  if (!deg || deg->d_s != d_s || deg->d_x != d_x) return false;
  const bool bfs_connected = is_connected(lift);
  const double trivial = std::sqrt(static_cast<double>(d_s) * d_x);
  const auto eigs = spectra::sym_eigenvalues(lift.adjacency());
  int top_mult = 0;
  for (const auto& [value, mult] : spectra::cluster_eigenvalues(eigs)) {
    if (std::fabs(std::fabs(value) - trivial) < 1e-7) top_mult += mult;
  }
  const bool spectral_connected = top_mult == 2;
  if (bfs_connected != spectral_connected)
    throw std::logic_error("connectivity certificates disagree");
  if (!bfs_connected) return false;
  const double threshold = std::sqrt(d_s - 1.0) + std::sqrt(d_x - 1.0);
  for (double mu : eigs) {
    if (std::fabs(std::fabs(mu) - trivial) <= 1e-9) continue;
    if (std::fabs(mu) > threshold + 1e-9) return false;
  }
  return true;
}

Signing signing_from_bits(const BipartiteGraph& g, std::uint64_t bits, int n_edges) {
  std::vector<int> signs(static_cast<std::size_t>(n_edges));
  for (int j = 0; j < n_edges; ++j)
    signs[j] = (bits >> (n_edges - 1 - j)) & 1 ? -1 : 1;
  return Signing(g, signs);
}

}  // namespace

Signing find_ramanujan_signing(const BipartiteGraph& g, SearchStrategy strategy,
                               std::uint64_t rng_seed, long max_tries) {
  const auto deg = is_biregular(g);
  if (!deg || deg->d_s < 3 || deg->d_x < 3)
    throw std::invalid_argument("base graph must be biregular with degrees >= 3");
  if (!is_ramanujan(g, deg->d_s, deg->d_x))
    throw std::invalid_argument("base graph must be Ramanujan");
  const int n_edges = static_cast<int>(g.edge_count());
  const double threshold = std::sqrt(deg->d_s - 1.0) + std::sqrt(deg->d_x - 1.0);

  auto accept = [&](const Signing& s) {
    // Cheap screen on the signed spectrum first, then the full certificate.
    if (max_new_eigenvalue(g, s) > threshold + 1e-9) return false;
    return certify_lift(two_lift(g, s), deg->d_s, deg->d_x);
  };

  if (strategy == SearchStrategy::exhaustive) {
    if (n_edges > 24) throw std::invalid_argument("exhaustive search limited to 24 edges");
    const std::uint64_t total = std::uint64_t{1} << n_edges;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      Signing s = signing_from_bits(g, bits, n_edges);
      if (accept(s)) return s;
    }
    throw SearchExhausted("exhaustive signing search found no Ramanujan lift",
                          static_cast<long>(total));
  }

  std::mt19937_64 rng(rng_seed);
  for (long t = 1; t <= max_tries; ++t) {
    std::vector<int> signs(static_cast<std::size_t>(n_edges));
    for (int j = 0; j < n_edges; ++j) signs[j] = (rng() & 1) ? -1 : 1;
    Signing s(g, signs);
    if (accept(s)) return s;
  }
  throw SearchExhausted("randomized signing search budget exhausted", max_tries);
}

std::vector<BipartiteGraph> ramanujan_decomposition(int d_s, int d_x, int k,
                                                    std::uint64_t rng_seed, long max_tries) {
  if (d_s < 3 || d_x < 3) throw std::invalid_argument("degrees must be at least 3");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const long final_vertices = (static_cast<long>(d_s) + d_x) << k;
  if (final_vertices > 4096)
    throw std::invalid_argument("decomposition exceeds the spectral size cap");

  // The base graph has the X part as its seed side so that k lifts later the
  // S part has size 2^k d_x.
  std::vector<BipartiteGraph> level{BipartiteGraph::complete(d_x, d_s)};
  for (int t = 1; t <= k; ++t) {
    std::vector<BipartiteGraph> next;
    next.reserve(level.size() * 2);
    for (std::size_t i = 0; i < level.size(); ++i) {
      const std::uint64_t seed =
          rng_seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(t) << 20 | i));
      const auto strategy = level[i].edge_count() <= 24 ? SearchStrategy::exhaustive
                                                        : SearchStrategy::randomized;
      Signing s = [&]() -> Signing {
        try {
          return find_ramanujan_signing(level[i], strategy, seed, max_tries);
        } catch (const SearchExhausted& e) {
          throw SearchExhausted(std::string(e.what()) + " at decomposition level " +
                                    std::to_string(t),
                                e.tries, t);
        }
      }();
      BipartiteGraph plus = two_lift(level[i], s);
      BipartiteGraph minus = two_lift(level[i], s.negated());
      if (!certify_lift(minus, d_s, d_x))
        throw std::logic_error("negated signing failed certification");
      next.push_back(std::move(plus));
      next.push_back(std::move(minus));
    }
    level = std::move(next);
  }
  return level;
}

FengLiReport feng_li_check(const BipartiteGraph& g) {
  const auto deg = is_biregular(g);
  if (!deg) throw std::invalid_argument("graph is not biregular");
  if (!is_connected(g)) throw std::invalid_argument("graph is not connected");
  const int diam = diameter(g).value();
  FengLiReport report{};
  report.diam = diam;
  const auto eigs = spectra::sym_eigenvalues(g.adjacency());
  report.lambda2 = eigs[1];
  if (diam < 8) {
    report.applicable = false;
    report.holds = true;
    report.lower_bound = 0;
    return report;
  }
  report.applicable = true;
  report.lower_bound = deg->d_s + deg->d_x - 2 +
                       2 * std::sqrt((deg->d_s - 1.0) * (deg->d_x - 1.0)) *
                           (1.0 - 1.0 / (diam - 1.0));
  report.holds = report.lambda2 * report.lambda2 >= report.lower_bound - 1e-9;
  return report;
}

void write_edge_list(const BipartiteGraph& g, std::ostream& os) {
  os << g.s_size() << ' ' << g.x_size() << '\n';
  for (const auto& [s, x] : g.edges()) os << s << ' ' << x << '\n';
}

BipartiteGraph read_edge_list(std::istream& is) {
  int s_size = 0, x_size = 0;
  if (!(is >> s_size >> x_size)) throw std::runtime_error("malformed edge list header");
  BipartiteGraph g(s_size, x_size);
  int s, x;
  while (is >> s >> x) {
    if (s < 0 || s >= s_size || x < 0 || x >= x_size)
      throw std::runtime_error("edge index out of range in edge list");
    g.set_edge(s, x, true);
  }
  return g;
}

}  // namespace briwt::graphs
