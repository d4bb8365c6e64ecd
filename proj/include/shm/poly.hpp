#ifndef SHM_POLY_HPP
#define SHM_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shm/scalar.hpp"

namespace shm {

// Polynomial variables live in fixed slots so the monomial layout is the same
// for every patch dimension up to kMaxDim:
//   slots 0..5   : z^1..z^6       (holomorphic coordinates, 0-based index)
//   slots 6..11  : zbar^1..zbar^6 (their conjugates, independent variables)
//   slot 12      : t              (deformation parameter, truncated)
//   slot 13      : N              (formal blow-up parameter, never truncated)
// z and zbar are independent variables (Wirtinger convention); conjugation is
// the slot swap plus Scalar conjugation.
constexpr int kMaxDim = 6;
constexpr int kSlotT = 2 * kMaxDim;
constexpr int kSlotN = 2 * kMaxDim + 1;
constexpr int kSlotCount = 2 * kMaxDim + 2;
constexpr int kDefaultTruncation = 2;
constexpr int kNoTDegree = 1 << 20;  // min_t_degree() of the zero polynomial

constexpr int slot_z(int i) { return i; }
constexpr int slot_zbar(int i) { return kMaxDim + i; }

class Monomial {
 public:
  Monomial() = default;

  int exp(int slot) const { return e_[static_cast<std::size_t>(slot)]; }
  void set_exp(int slot, int e);

  int total_degree() const;
  int t_degree() const { return exp(kSlotT); }
  int n_degree() const { return exp(kSlotN); }
  bool is_one() const { return total_degree() == 0; }

  Monomial times(const Monomial& o) const;
  Monomial conj() const;  // swap z_i <-> zbar_i, fix t and N
  Monomial relabeled(const std::vector<int>& perm) const;
  Monomial shifted(int offset) const;  // z_i -> z_{i+offset}, same for zbar

  // Largest 0-based coordinate index used by z or zbar slots, -1 if none.
  int max_coordinate() const;
  bool uses_t() const { return exp(kSlotT) > 0; }
  bool uses_n() const { return exp(kSlotN) > 0; }

  bool operator==(const Monomial&) const = default;
  // Graded order, deterministic; canonical for printing and map iteration.
  bool operator<(const Monomial& o) const {
    int da = total_degree(), db = o.total_degree();
    if (da != db) return da < db;
    return e_ < o.e_;
  }

  // "z1*zb2^2*t" with the holomorphic base name substitutable ("w" for chart
  // coordinates); empty string for the unit monomial.
  std::string str(const std::string& holo_name = "z") const;

 private:
  std::array<std::uint8_t, kSlotCount> e_{};
};

// Sparse polynomial over the Gaussian rationals in z, zbar, t, N.
// Invariants: no stored zero coefficients; no term with t-exponent above
// truncation(). Arithmetic silently drops higher t-orders (exact jets).
class Poly {
 public:
  explicit Poly(int truncation = kDefaultTruncation) : trunc_(truncation) {}

  static Poly constant(Scalar c, int truncation = kDefaultTruncation);
  static Poly variable(int slot, int truncation = kDefaultTruncation);
  static Poly term(Monomial m, Scalar c, int truncation = kDefaultTruncation);

  bool is_zero() const { return terms_.empty(); }
  int truncation() const { return trunc_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Scalar& c) const;

  Poly derivative(int slot) const;
  Poly conj() const;
  Poly times_var(int slot, int k = 1) const;
  // Exact coefficient of t^k as a t-free polynomial.
  Poly t_coefficient(int k) const;
  // Exact coefficient of N^k with the N factor stripped.
  Poly n_coefficient(int k) const;
  Poly truncated(int order) const;
  int min_t_degree() const;  // kNoTDegree when zero

  Poly relabeled(const std::vector<int>& perm) const;
  Poly shifted(int offset) const;

  int max_coordinate() const;
  bool uses_t() const;
  bool uses_n() const;

  // Evaluation at a point: z_i = values[i], zbar_i = conj(values[i]), t = 0;
  // N substituted when a value is supplied, error if N occurs without one.
  Scalar eval(const std::vector<Scalar>& z_values,
              const std::optional<Rational>& n_value = std::nullopt) const;

  // Ring-morphism substitution z_i -> z_images[i], zbar_i -> zbar_images[i];
  // t and N pass through. Used by pullbacks.
  Poly substitute(const std::vector<Poly>& z_images,
                  const std::vector<Poly>& zbar_images) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str(const std::string& holo_name = "z") const;

 private:
  void insert_term(const Monomial& m, const Scalar& c);

  std::map<Monomial, Scalar> terms_;
  int trunc_;
};

Poly pow(const Poly& base, int k);

}  // namespace shm

#endif
