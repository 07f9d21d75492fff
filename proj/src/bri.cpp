#include "briwt/bri.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace briwt::bri {

BriFunction::BriFunction(int s_count, int x_count, int n_count, int d_s, int d_x,
                         std::vector<int> regularity, std::function<int(int, int)> eval)
    : s_count_(s_count),
      x_count_(x_count),
      n_count_(n_count),
      d_s_(d_s),
      d_x_(d_x),
      regularity_(std::move(regularity)),
      eval_(std::move(eval)) {
  if (s_count < 1 || x_count < 1 || n_count < 1)
    throw std::invalid_argument("alphabet sizes must be positive");
  std::sort(regularity_.begin(), regularity_.end());
  for (int m : regularity_)
    if (m < 0 || m >= n_count) throw std::invalid_argument("regularity index out of range");
  if (std::adjacent_find(regularity_.begin(), regularity_.end()) != regularity_.end())
    throw std::invalid_argument("duplicate regularity index");
}

bool BriFunction::in_regularity(int m) const {
  return std::binary_search(regularity_.begin(), regularity_.end(), m);
}

BriFunction table_bri(int s_count, int x_count, int n_count, int d_s, int d_x,
                      std::vector<int> regularity, std::vector<int> table) {
  if (table.size() != static_cast<std::size_t>(s_count) * x_count)
    throw std::invalid_argument("table size mismatch");
  for (int v : table)
    if (v < 0 || v >= n_count) throw std::invalid_argument("table value out of range");
  auto shared = std::make_shared<const std::vector<int>>(std::move(table));
  return BriFunction(s_count, x_count, n_count, d_s, d_x, std::move(regularity),
                     [shared, x_count](int s, int x) {
                       return (*shared)[static_cast<std::size_t>(s) * x_count + x];
                     });
}

std::vector<int> preimage(const BriFunction& f, int s, int m) {
  std::vector<int> xs;
  for (int x = 0; x < f.x_count(); ++x)
    if (f(s, x) == m) xs.push_back(x);
  return xs;
}

spectra::SymMatrix pfm_matrix(const BriFunction& f, int m) {
  if (!f.in_regularity(m)) throw std::invalid_argument("message outside the regularity set");
  const int nx = f.x_count();
  spectra::SymMatrix p(nx);
  std::vector<double> counts(static_cast<std::size_t>(nx) * nx, 0.0);
  for (int s = 0; s < f.s_count(); ++s) {
    const auto xs = preimage(f, s, m);
    for (int a : xs)
      for (int b : xs) counts[static_cast<std::size_t>(a) * nx + b] += 1.0;
  }
  const double scale = 1.0 / (static_cast<double>(f.d_s()) * f.d_x());
  for (int a = 0; a < nx; ++a)
    for (int b = a; b < nx; ++b)
      p.set(a, b, counts[static_cast<std::size_t>(a) * nx + b] * scale);
  return p;
}

graphs::BipartiteGraph message_graph(const BriFunction& f, int m) {
  graphs::BipartiteGraph g(f.s_count(), f.x_count());
  for (int s = 0; s < f.s_count(); ++s)
    for (int x = 0; x < f.x_count(); ++x)
      if (f(s, x) == m) g.set_edge(s, x, true);
  return g;
}

double lambda2(const BriFunction& f, int m) {
  const double via_pfm = spectra::second_largest_modulus(pfm_matrix(f, m));
  const auto g = message_graph(f, m);
  const auto eigs = spectra::sym_eigenvalues(g.adjacency());
  const double via_graph =
      eigs[1] * eigs[1] / (static_cast<double>(f.d_s()) * f.d_x());
  if (std::fabs(via_pfm - via_graph) > 1e-8)
    throw std::logic_error("collision-matrix and graph eigenvalue routes disagree");
  return via_pfm;
}

int randomized_inverse(const BriFunction& f, int s, int m, std::mt19937_64& rng) {
  if (!f.in_regularity(m)) throw std::invalid_argument("message outside the regularity set");
  const auto xs = preimage(f, s, m);
  if (xs.empty()) throw std::runtime_error("empty preimage; table corrupted or message invalid");
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  return xs[pick(rng)];
}

channels::DiscreteChannel qfm_channel(const BriFunction& f, int m) {
  if (!f.in_regularity(m)) throw std::invalid_argument("message outside the regularity set");
  std::vector<double> d(static_cast<std::size_t>(f.s_count()) * f.x_count(), 0.0);
  for (int s = 0; s < f.s_count(); ++s) {
    const auto xs = preimage(f, s, m);
    if (xs.empty()) throw std::runtime_error("empty preimage; table corrupted or message invalid");
    for (int x : xs) d[static_cast<std::size_t>(s) * f.x_count() + x] = 1.0 / f.d_s();
  }
  return channels::DiscreteChannel::raw(f.s_count(), f.x_count(), std::move(d), false);
}

BriFunction bri_from_graph_family(const std::vector<graphs::BipartiteGraph>& family,
                                  const std::vector<int>& labels) {
  if (family.empty()) throw std::invalid_argument("empty graph family");
  if (family.size() != labels.size())
    throw std::invalid_argument("family and label list sizes differ");
  const int ns = family[0].s_size(), nx = family[0].x_size();
  std::vector<int> table(static_cast<std::size_t>(ns) * nx, -1);
  int n_count = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].s_size() != ns || family[i].x_size() != nx)
      throw std::invalid_argument("family members use different bipartitions");
    if (labels[i] < 0) throw std::invalid_argument("labels must be nonnegative");
    n_count = std::max(n_count, labels[i] + 1);
    for (const auto& [s, x] : family[i].edges()) {
      auto& cell = table[static_cast<std::size_t>(s) * nx + x];
      if (cell != -1) throw std::invalid_argument("family members share an edge");
      cell = labels[i];
    }
  }
  for (int v : table)
    if (v == -1)
      throw std::invalid_argument("family does not cover the complete bipartite graph");

  const auto deg = graphs::is_biregular(family[0]);
  if (!deg) throw std::invalid_argument("first family member is not biregular");
  return table_bri(ns, nx, n_count, deg->d_s, deg->d_x, labels, std::move(table));
}

std::vector<graphs::BipartiteGraph> graph_family_of(const BriFunction& f) {
  std::vector<graphs::BipartiteGraph> family;
  family.reserve(static_cast<std::size_t>(f.n_count()));
  for (int m = 0; m < f.n_count(); ++m) family.push_back(message_graph(f, m));
  return family;
}

BriCertificate verify_bri(const BriFunction& f) {
  BriCertificate cert{};
  const long m_size = static_cast<long>(f.regularity().size());
  cert.double_counting_ok =
      static_cast<long>(f.d_x()) * f.x_count() == static_cast<long>(f.d_s()) * f.s_count();
  cert.m_card_ok = m_size * f.d_s() <= f.x_count();
  cert.seed_size_ok = static_cast<long>(f.s_count()) >= static_cast<long>(f.d_x()) * m_size;

  for (int m : f.regularity()) {
    MessageRecord rec{};
    rec.m = m;
    rec.s_regular = true;
    rec.x_regular = true;
    std::vector<int> x_deg(f.x_count(), 0);
    for (int s = 0; s < f.s_count(); ++s) {
      int deg = 0;
      for (int x = 0; x < f.x_count(); ++x) {
        if (f(s, x) == m) {
          ++deg;
          ++x_deg[x];
        }
      }
      if (deg != f.d_s() && rec.s_regular) {
        rec.s_regular = false;
        rec.bad_seed = s;
      }
    }
    for (int x = 0; x < f.x_count(); ++x) {
      if (x_deg[x] != f.d_x()) {
        rec.x_regular = false;
        rec.bad_input = x;
        break;
      }
    }
    if (rec.s_regular && rec.x_regular) {
      rec.lambda2 = spectra::second_largest_modulus(pfm_matrix(f, m));
      rec.connected = graphs::is_connected(message_graph(f, m));
      rec.irreducible = rec.lambda2 <= 1.0 - 1e-7;
      if (rec.connected != rec.irreducible)
        throw std::logic_error("connectivity and eigenvalue certificates disagree");
    } else {
      rec.lambda2 = std::numeric_limits<double>::quiet_NaN();
      rec.connected = false;
      rec.irreducible = false;
    }
    cert.messages.push_back(rec);
  }

  // Collision average and qualification identities, exact over counts.
  cert.uhf_value = 0;
  cert.uhf_ok = true;
  if (m_size > 0) {
    cert.uhf_value = uhf_average_check(f, 0);
    const double expected =
        f.x_count() > 1 ? static_cast<double>(f.d_s() - 1) / (f.x_count() - 1) : 0.0;
    cert.uhf_ok = std::fabs(cert.uhf_value - expected) <= 1e-12 &&
                  cert.uhf_value <= 1.0 / static_cast<double>(m_size) + 1e-12;
  }

  cert.qualif_ok = true;
  for (int x = 0; x < f.x_count() && cert.qualif_ok; ++x) {
    long hits = 0;
    for (int s = 0; s < f.s_count(); ++s)
      if (f.in_regularity(f(s, x))) ++hits;
    if (hits != m_size * f.d_x()) cert.qualif_ok = false;
  }
  return cert;
}

bool BriCertificate::valid() const {
  if (!(double_counting_ok && m_card_ok && seed_size_ok && uhf_ok && qualif_ok)) return false;
  for (const auto& rec : messages)
    if (!rec.pass()) return false;
  return true;
}

double uhf_average_check(const BriFunction& f, int fixed_x) {
  if (fixed_x < 0 || fixed_x >= f.x_count()) throw std::invalid_argument("fixed input out of range");
  if (f.x_count() == 1) return 0.0;
  // P[f(S,x) in M] = |M| d_x / |S| and the pairwise collision counts are
  // exact integers, so the ratio is computed from counts.
  long in_m = 0;
  for (int s = 0; s < f.s_count(); ++s)
    if (f.in_regularity(f(s, fixed_x))) ++in_m;
  if (in_m == 0) return 0.0;
  long collisions = 0;
  for (int xp = 0; xp < f.x_count(); ++xp) {
    if (xp == fixed_x) continue;
    for (int s = 0; s < f.s_count(); ++s) {
      const int v = f(s, fixed_x);
      if (v == f(s, xp) && f.in_regularity(v)) ++collisions;
    }
  }
  return static_cast<double>(collisions) / (static_cast<double>(in_m) * (f.x_count() - 1));
}

void write_table(const BriFunction& f, std::ostream& os) {
  os << f.s_count() << ' ' << f.x_count() << ' ' << f.n_count() << ' ' << f.d_s() << ' '
     << f.d_x() << '\n';
  os << f.regularity().size();
  for (int m : f.regularity()) os << ' ' << m;
  os << '\n';
  for (int s = 0; s < f.s_count(); ++s) {
    for (int x = 0; x < f.x_count(); ++x) {
      if (x) os << ' ';
      os << f(s, x);
    }
    os << '\n';
  }
}

BriFunction read_table(std::istream& is) {
  int ns, nx, nn, ds, dx;
  if (!(is >> ns >> nx >> nn >> ds >> dx)) throw std::runtime_error("malformed table header");
  std::size_t m_size;
  if (!(is >> m_size)) throw std::runtime_error("malformed regularity list");
  std::vector<int> regularity(m_size);
  for (auto& m : regularity)
    if (!(is >> m)) throw std::runtime_error("malformed regularity list");
  std::vector<int> table(static_cast<std::size_t>(ns) * nx);
  for (auto& v : table)
    if (!(is >> v)) throw std::runtime_error("truncated table body");
  return table_bri(ns, nx, nn, ds, dx, std::move(regularity), std::move(table));
}

}  // namespace briwt::bri
