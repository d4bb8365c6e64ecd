#ifndef SHM_BIFORM_HPP
#define SHM_BIFORM_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shm/poly.hpp"

namespace shm {

// Coframe monomial dz^I ∧ dzbar^J with I, J strictly increasing index lists,
// stored as bitmasks (bit i = coordinate index i, 0-based). Holomorphic
// factors always come first; signs from reordering are tracked by the
// operations, so equal masks mean equal monomials.
struct FormMonomial {
  std::uint32_t holo = 0;
  std::uint32_t anti = 0;

  int p() const { return std::popcount(holo); }
  int q() const { return std::popcount(anti); }
  int degree() const { return p() + q(); }
  bool operator==(const FormMonomial&) const = default;
};

// Order: total degree, then holomorphic index list lexicographically, then
// antiholomorphic. Gives the canonical printing order.
int index_lex_cmp(std::uint32_t a, std::uint32_t b);

struct FormMonomialLess {
  bool operator()(const FormMonomial& a, const FormMonomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (int c = index_lex_cmp(a.holo, b.holo); c != 0) return c < 0;
    return index_lex_cmp(a.anti, b.anti) < 0;
  }
};

// Sign (+1/-1) of sorting the concatenation of two disjoint increasing index
// sets, i.e. parity of #{(a,b) in first x second : a > b}.
int merge_sign(std::uint32_t first, std::uint32_t second);

// A point of the coordinate patch: values for z^i; zbar^i evaluate to the
// conjugates, t to 0.
struct Point {
  std::vector<Scalar> coords;
  int dim() const { return static_cast<int>(coords.size()); }
};

// Sparse bigraded complex differential form with Poly coefficients. Mixed
// bidegrees are allowed; each stored term carries its own (p,q).
class BiForm {
 public:
  explicit BiForm(int dim, int truncation = kDefaultTruncation);

  static BiForm scalar(int dim, Poly f);
  static BiForm monomial(int dim, FormMonomial m, Poly c);
  // Convenience: coefficient * dz^{holo} ∧ dzbar^{anti}, 0-based index lists.
  static BiForm coframe(int dim, std::initializer_list<int> holo,
                        std::initializer_list<int> anti, Scalar c = Scalar(1),
                        int truncation = kDefaultTruncation);

  int dim() const { return dim_; }
  int truncation() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<FormMonomial, Poly, FormMonomialLess>& terms() const { return terms_; }
  Poly coefficient(const FormMonomial& m) const;

  void add_term(const FormMonomial& m, const Poly& c);

  BiForm operator-() const;
  BiForm& operator+=(const BiForm& o);
  BiForm& operator-=(const BiForm& o);
  friend BiForm operator+(BiForm a, const BiForm& b) { return a += b; }
  friend BiForm operator-(BiForm a, const BiForm& b) { return a -= b; }
  BiForm operator*(const Scalar& c) const;
  BiForm operator*(const Poly& f) const;

  bool is_pure_bidegree(int p, int q) const;  // zero form belongs to every bidegree
  // (p,q) of a nonzero pure form; nullopt for zero or mixed forms.
  std::optional<std::pair<int, int>> pure_bidegree() const;

  bool uses_t() const;
  bool uses_n() const;
  int max_coordinate() const;

  bool operator==(const BiForm& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const BiForm& o) const { return !(*this == o); }

 private:
  int dim_;
  int trunc_;
  std::map<FormMonomial, Poly, FormMonomialLess> terms_;
};

BiForm wedge(const BiForm& a, const BiForm& b);
BiForm exterior_d(const BiForm& a);
BiForm del(const BiForm& a);
BiForm delbar(const BiForm& a);
BiForm conj(const BiForm& a);
BiForm j_action(const BiForm& a);
BiForm power(const BiForm& a, int k);  // k >= 0; k = 0 gives the unit 0-form
BiForm t_derivative_at_zero(const BiForm& a);
// Coefficient of N^k, coefficient-wise.
BiForm n_coefficient(const BiForm& a, int k);
// Coefficient-wise d/d(var) without adding a coframe factor (used by the
// vector-form bracket).
BiForm coeff_derivative(const BiForm& a, int slot);
BiForm retruncate(const BiForm& a, int order);
// Relabel coordinates by a permutation of {0..n-1}; tracks resorting signs.
BiForm relabel(const BiForm& a, const std::vector<int>& perm);
// Reinterpret a dim-a form on coordinates offset..offset+a-1 of a dim-n patch.
BiForm shift_embed(const BiForm& a, int new_dim, int offset);

// Holomorphic polynomial map w -> (f^1(w)..f^n(w)); components use only the
// holomorphic w slots of the source patch.
struct HoloMap {
  int source_dim = 0;
  int target_dim = 0;
  std::vector<Poly> components;
};
HoloMap make_holo_map(int source_dim, int target_dim, std::vector<Poly> components);

// Pullback: z^i <- f^i(w), dz^i <- sum_j (df^i/dw^j) dw^j, plus conjugates;
// a ring-and-wedge morphism.
BiForm pullback(const HoloMap& f, const BiForm& a);

// For a pure (1,1) form  a = i * sum g_{j kbar} dz^j ∧ dzbar^k, the exact
// matrix g evaluated at p (t = 0; N substituted when supplied).
std::vector<std::vector<Scalar>> hermitian_matrix_at(
    const BiForm& a, const Point& p, const std::optional<Rational>& n_value = std::nullopt);

// Sylvester criterion on the exact leading principal minors. Requires a
// conj-real pure (1,1) input.
bool is_positive_definite_at(const BiForm& a, const Point& p,
                             const std::optional<Rational>& n_value = std::nullopt);

std::string to_string(const BiForm& a, const std::string& holo_name = "z");

}  // namespace shm

#endif
