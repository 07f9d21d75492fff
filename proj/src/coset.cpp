#include "briwt/coset.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "briwt/infodiv.hpp"

namespace briwt::coset {

namespace {

// Incremental GF(2) elimination basis over bit vectors.
class BitBasis {
 public:
  // Returns true when v was independent of the current span and got added.
  bool add(std::uint32_t v) {
    for (const auto& [pivot, row] : rows_) {
      if (v & pivot) v ^= row;
    }
    if (v == 0) return false;
    rows_.emplace_back(std::uint32_t{1} << (31 - __builtin_clz(v)), v);
    return true;
  }
  bool contains(std::uint32_t v) const {
    for (const auto& [pivot, row] : rows_) {
      if (v & pivot) v ^= row;
    }
    return v == 0;
  }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> rows_;
};

std::vector<gf2e::Elem> span_of(const std::vector<gf2e::Elem>& basis) {
  std::vector<gf2e::Elem> span(std::size_t{1} << basis.size(), 0);
  for (std::size_t idx = 0; idx < span.size(); ++idx) {
    gf2e::Elem e = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (idx & (std::size_t{1} << i)) e ^= basis[i];
    span[idx] = e;
  }
  return span;
}

}  // namespace

CosetBri::CosetBri(gf2e::FieldCtx ctx, int b, std::optional<std::vector<gf2e::Elem>> n_basis)
    : ctx_(std::move(ctx)), b_(b) {
  const int l = ctx_.degree();
  if (b < 1 || l % b != 0) throw std::invalid_argument("b must divide the field degree");
  if (b == l) throw std::invalid_argument("the complement of the full subfield is trivial");

  // V is the set of elements fixed by b squarings; extract a GF(2) basis.
  BitBasis v_elim;
  for (gf2e::Elem x = 1; x < ctx_.size(); ++x) {
    if (ctx_.in_subfield(b_, x) && v_elim.add(x)) v_basis_.push_back(x);
  }
  if (v_elim.rank() != b) throw std::logic_error("subfield basis extraction failed");

  BitBasis joint;
  for (gf2e::Elem v : v_basis_) joint.add(v);
  if (n_basis) {
    if (static_cast<int>(n_basis->size()) != l - b)
      throw std::invalid_argument("complement basis must have dimension l - b");
    for (gf2e::Elem e : *n_basis) {
      if (e >= ctx_.size()) throw std::invalid_argument("complement basis element out of range");
      if (!joint.add(e))
        throw std::invalid_argument("complement basis is not independent of the subfield");
      n_basis_.push_back(e);
    }
  } else {
    // Greedy completion by polynomial-basis monomials of increasing degree.
    for (int i = 0; i < l && joint.rank() < l; ++i) {
      const gf2e::Elem mono = gf2e::Elem{1} << i;
      if (joint.add(mono)) n_basis_.push_back(mono);
    }
  }
  if (joint.rank() != l) throw std::logic_error("basis completion failed");

  v_span_ = span_of(v_basis_);
  n_span_ = span_of(n_basis_);
  n_index_.assign(ctx_.size(), -1);
  for (std::size_t i = 0; i < n_span_.size(); ++i) n_index_[n_span_[i]] = static_cast<int>(i);

  // Invert the concatenated basis [N | V] over GF(2); coord_rows_[i] dotted
  // with an element's bits yields its i-th coordinate.
  {
    const int n = l;
    std::vector<std::uint64_t> aug(n);  // low bits: basis matrix rows; high: identity
    // Column j of the basis matrix is n_basis (j < k) or v_basis (j >= k);
    // build rows of the transposed system so each row solves one bit.
    std::vector<std::uint32_t> cols(n);
    for (int j = 0; j < n; ++j)
      cols[j] = j < k() ? n_basis_[j] : v_basis_[j - k()];
    for (int i = 0; i < n; ++i) {
      std::uint64_t row = 0;
      for (int j = 0; j < n; ++j)
        if (cols[j] & (std::uint32_t{1} << i)) row |= std::uint64_t{1} << j;
      aug[i] = row | (std::uint64_t{1} << (n + i));
    }
    // Gauss-Jordan.
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (aug[r] & (std::uint64_t{1} << col)) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::logic_error("basis matrix is singular");
      std::swap(aug[col], aug[pivot]);
      for (int r = 0; r < n; ++r)
        if (r != col && (aug[r] & (std::uint64_t{1} << col))) aug[r] ^= aug[col];
    }
    coord_rows_.assign(n, 0);
    for (int i = 0; i < n; ++i)
      coord_rows_[i] = static_cast<std::uint32_t>(aug[i] >> n);
  }

  for (gf2e::Elem e : n_span_) {
    if (e != 0 && ctx_.generates_field(b_, e)) m_elems_.push_back(e);
  }
  std::sort(m_elems_.begin(), m_elems_.end());

  // The regularity-set cardinality has a closed form; treat a mismatch as an
  // internal error.
  const int a = l / b;
  const std::uint64_t expected =
      static_cast<std::uint64_t>(a) * gf2e::count_irreducible(std::uint64_t{1} << b, a) >> b;
  if (m_elems_.size() != expected)
    throw std::logic_error("regularity set size does not match the closed form");
  const double lower = std::exp2(k()) * (1.0 - std::exp2(1.0 - l / 2.0));
  if (static_cast<double>(m_elems_.size()) < lower - 1e-9)
    throw std::logic_error("regularity set smaller than its lower bound");
}

gf2e::Elem CosetBri::n_component(gf2e::Elem y) const {
  gf2e::Elem out = 0;
  for (int i = 0; i < k(); ++i) {
    if (__builtin_parity(coord_rows_[i] & y)) out ^= n_basis_[i];
  }
  return out;
}

gf2e::Elem CosetBri::beta(gf2e::Elem s, gf2e::Elem x) const {
  if (s == 0 || x == 0) throw std::invalid_argument("seed and input must be nonzero");
  return n_component(ctx_.mul(s, x));
}

int CosetBri::message_index(gf2e::Elem n_elem) const {
  if (n_elem >= ctx_.size() || n_index_[n_elem] < 0)
    throw std::invalid_argument("element outside span(N)");
  return n_index_[n_elem];
}

gf2e::Elem CosetBri::message_elem(int index) const {
  if (index < 0 || index >= static_cast<int>(n_span_.size()))
    throw std::invalid_argument("message index out of range");
  return n_span_[static_cast<std::size_t>(index)];
}

bri::BriFunction CosetBri::as_bri() const {
  std::vector<int> regularity;
  regularity.reserve(m_elems_.size());
  for (gf2e::Elem m : m_elems_) regularity.push_back(n_index_[m]);
  auto self = std::make_shared<const CosetBri>(*this);
  const int n = static_cast<int>(ctx_.order());
  return bri::BriFunction(
      n, n, 1 << k(), 1 << b_, 1 << b_, std::move(regularity),
      [self](int s, int x) {
        return self->n_index_[self->beta(static_cast<gf2e::Elem>(s + 1),
                                         static_cast<gf2e::Elem>(x + 1))];
      });
}

double CosetBri::eigenvalue_bound() const {
  const double ratio = static_cast<double>(k()) / b_;
  return ratio * ratio * std::exp2(-b_);
}

double CosetBri::cayley_lambda2(gf2e::Elem m) const {
  if (!std::binary_search(m_elems_.begin(), m_elems_.end(), m))
    throw std::invalid_argument("message is not in the regularity set");
  const std::uint32_t n = ctx_.order();
  // Connection set: discrete logs of the coset V + m.
  std::vector<std::uint32_t> logs;
  logs.reserve(v_span_.size());
  for (gf2e::Elem v : v_span_) logs.push_back(ctx_.log(v ^ m));

  double max_sq = 0;
  const double step = 2.0 * M_PI / n;
  for (std::uint32_t j = 1; j < n; ++j) {
    double re = 0, im = 0;
    for (std::uint32_t d : logs) {
      const double ang = step * ((static_cast<std::uint64_t>(j) * d) % n);
      re += std::cos(ang);
      im += std::sin(ang);
    }
    max_sq = std::max(max_sq, re * re + im * im);
  }
  const double lambda = max_sq / std::exp2(2.0 * b_);
  if (lambda > eigenvalue_bound() + 1e-6)
    throw std::logic_error("character sum exceeds the eigenvalue bound");
  return lambda;
}

gf2e::Elem hm_encode(const CosetBri& cb, gf2e::Elem s1, gf2e::Elem s2, gf2e::Elem m,
                     std::mt19937_64& rng) {
  if (s1 == 0) throw std::invalid_argument("multiplicative seed must be nonzero");
  const auto& ctx = cb.field();
  cb.message_index(m);  // rejects elements outside span(N)
  const auto& v_span = cb.v_span();
  std::uniform_int_distribution<std::size_t> pick(0, v_span.size() - 1);
  const gf2e::Elem v = v_span[pick(rng)];
  return ctx.add(ctx.mul(ctx.inv(s1), ctx.add(m, v)), s2);
}

gf2e::Elem hm_decode(const CosetBri& cb, gf2e::Elem s1, gf2e::Elem s2, gf2e::Elem x) {
  if (s1 == 0) throw std::invalid_argument("multiplicative seed must be nonzero");
  const auto& ctx = cb.field();
  const gf2e::Elem shifted = ctx.add(x, s2);
  if (shifted == 0) throw std::invalid_argument("codeword collides with the zero element");
  return cb.beta(s1, shifted);
}

double hm_bound(const gf2e::FieldCtx& ctx, int b, const channels::DiscreteChannel& w) {
  if (b < 1 || b > ctx.degree()) throw std::invalid_argument("randomness dimension out of range");
  if (w.inputs() != static_cast<int>(ctx.size()))
    throw std::invalid_argument("channel input alphabet must be the full field");
  const double d2 = infodiv::renyi2_uniform_input(w);
  return std::exp2(-(b - d2)) / std::log(2.0);
}

}  // namespace briwt::coset
