#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "briwt/bri.hpp"
#include "briwt/channels.hpp"
#include "briwt/gf2e.hpp"

namespace briwt::coset {

// Seeded coset function beta(s, x) = the N-component of s*x in the direct
// decomposition F_{2^l} = V + N with V the subfield F_{2^b}.  The regularity
// set holds those elements of span(N) that generate the full field over V.
class CosetBri {
 public:
  CosetBri(gf2e::FieldCtx ctx, int b,
           std::optional<std::vector<gf2e::Elem>> n_basis = std::nullopt);

  const gf2e::FieldCtx& field() const { return ctx_; }
  int b() const { return b_; }
  int k() const { return ctx_.degree() - b_; }
  const std::vector<gf2e::Elem>& v_basis() const { return v_basis_; }
  const std::vector<gf2e::Elem>& n_basis() const { return n_basis_; }
  // All 2^b elements of the subfield, in coefficient-index order.
  const std::vector<gf2e::Elem>& v_span() const { return v_span_; }
  // Regularity set as field elements, ascending.
  const std::vector<gf2e::Elem>& regularity_elems() const { return m_elems_; }

  // N-component of s*x; both arguments nonzero.
  gf2e::Elem beta(gf2e::Elem s, gf2e::Elem x) const;

  // Field element of span(N) <-> its k-bit coefficient index.
  int message_index(gf2e::Elem n_elem) const;
  gf2e::Elem message_elem(int index) const;

  // View with S = X = the nonzero field elements (index i is element i+1)
  // and outputs indexed by N coefficients.
  bri::BriFunction as_bri() const;

  // Exact second-largest eigenvalue modulus of the collision matrix for one
  // regular message, from the character sums of the associated Cayley sum
  // graph (a length-(2^l - 1) transform of the coset's discrete logs).
  double cayley_lambda2(gf2e::Elem m) const;

  // (k/b)^2 2^-b.
  double eigenvalue_bound() const;

 private:
  gf2e::Elem n_component(gf2e::Elem y) const;

  gf2e::FieldCtx ctx_;
  int b_;
  std::vector<gf2e::Elem> v_basis_, n_basis_;
  std::vector<gf2e::Elem> v_span_;   // all 2^b subfield elements
  std::vector<gf2e::Elem> n_span_;   // indexed by coefficient bits
  std::vector<int> n_index_;         // field element -> index in span(N), -1 outside
  std::vector<gf2e::Elem> m_elems_;  // generators inside span(N)
  std::vector<std::uint32_t> coord_rows_;  // GF(2) solve matrix, row i -> coordinate i
};

// Seed-randomized group encoder built on the unconstrained coset function:
// picks v uniformly in the subfield and maps the message block m through
// s1^{-1} (m + v) + s2, so recovering the N-component of s1 * (x - s2)
// returns m.
gf2e::Elem hm_encode(const CosetBri& cb, gf2e::Elem s1, gf2e::Elem s2, gf2e::Elem m,
                     std::mt19937_64& rng);
gf2e::Elem hm_decode(const CosetBri& cb, gf2e::Elem s1, gf2e::Elem s2, gf2e::Elem x);

// Leakage bound of the group-homomorphism component at Renyi order 2:
// (1/ln 2) 2^{-(b - D2(W || P_X W | P_X))} for a channel on the full field.
double hm_bound(const gf2e::FieldCtx& ctx, int b, const channels::DiscreteChannel& w);

}  // namespace briwt::coset
