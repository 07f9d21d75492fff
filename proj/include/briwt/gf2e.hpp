#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace briwt::gf2e {

// Field element of GF(2^l) in the polynomial basis; bit i holds the
// coefficient of x^i.  Valid elements have all bits above l-1 clear.
using Elem = std::uint32_t;

// Polynomial over GF(2), bit i = coefficient of x^i.
using Poly = std::uint64_t;

int poly_degree(Poly p);
Poly poly_mulmod(Poly a, Poly b, Poly modulus);
bool poly_irreducible(Poly p);

// Smallest irreducible polynomial of the given degree when the coefficient
// word is read as an integer.
Poly smallest_irreducible(int degree);

Poly poly_from_hex(const std::string& hex);
std::string poly_to_hex(Poly p);

int mobius(std::uint64_t d);

// Number of monic irreducible polynomials of degree n over F_q.
std::uint64_t count_irreducible(std::uint64_t q, int n);

// Arithmetic context for GF(2^l), 1 <= l <= 24.  Immutable once built; all
// member functions are const and safe to call concurrently.
class FieldCtx {
 public:
  explicit FieldCtx(int degree, std::optional<Poly> modulus = std::nullopt);

  int degree() const { return degree_; }
  Poly modulus() const { return modulus_; }
  Elem primitive() const { return primitive_; }
  std::uint32_t size() const { return std::uint32_t{1} << degree_; }
  std::uint32_t order() const { return size() - 1; }  // multiplicative group

  Elem add(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;  // square-and-multiply
  Elem inv(Elem a) const;                   // a != 0

  // Discrete log base the primitive element; a != 0.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t e) const;  // primitive^e

  // Membership in the subfield F_{2^b}; requires b | degree.
  bool in_subfield(int b, Elem x) const;

  // True iff the smallest subfield containing F_{2^b} and m is the full
  // field; requires b | degree.
  bool generates_field(int b, Elem m) const;

 private:
  void check_elem(Elem a) const;

  int degree_;
  Poly modulus_;
  Elem primitive_;
  std::vector<std::uint32_t> log_table_;  // index: element, valid for != 0
  std::vector<Elem> exp_table_;           // index: exponent in [0, order)
};

}  // namespace briwt::gf2e
