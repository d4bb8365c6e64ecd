#include "shm/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace shm {

void Monomial::set_exp(int slot, int e) {
  if (slot < 0 || slot >= kSlotCount) throw std::invalid_argument("variable slot out of range");
  if (e < 0 || e > 255) throw std::invalid_argument("exponent out of range");
  e_[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(e);
}

int Monomial::total_degree() const {
  int d = 0;
  for (auto e : e_) d += e;
  return d;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  for (int s = 0; s < kSlotCount; ++s) {
    int e = exp(s) + o.exp(s);
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    r.e_[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(e);
  }
  return r;
}

Monomial Monomial::conj() const {
  Monomial r = *this;
  for (int i = 0; i < kMaxDim; ++i)
    std::swap(r.e_[static_cast<std::size_t>(slot_z(i))],
              r.e_[static_cast<std::size_t>(slot_zbar(i))]);
  return r;
}

Monomial Monomial::relabeled(const std::vector<int>& perm) const {
  Monomial r;
  r.e_[kSlotT] = e_[kSlotT];
  r.e_[kSlotN] = e_[kSlotN];
  for (int i = 0; i < kMaxDim; ++i) {
    int j = (i < static_cast<int>(perm.size())) ? perm[static_cast<std::size_t>(i)] : i;
    r.e_[static_cast<std::size_t>(slot_z(j))] = e_[static_cast<std::size_t>(slot_z(i))];
    r.e_[static_cast<std::size_t>(slot_zbar(j))] = e_[static_cast<std::size_t>(slot_zbar(i))];
  }
  return r;
}

Monomial Monomial::shifted(int offset) const {
  Monomial r;
  r.e_[kSlotT] = e_[kSlotT];
  r.e_[kSlotN] = e_[kSlotN];
  for (int i = 0; i < kMaxDim; ++i) {
    if (exp(slot_z(i)) == 0 && exp(slot_zbar(i)) == 0) continue;
    int j = i + offset;
    if (j < 0 || j >= kMaxDim) throw std::invalid_argument("coordinate shift out of range");
    r.e_[static_cast<std::size_t>(slot_z(j))] = e_[static_cast<std::size_t>(slot_z(i))];
    r.e_[static_cast<std::size_t>(slot_zbar(j))] = e_[static_cast<std::size_t>(slot_zbar(i))];
  }
  return r;
}

int Monomial::max_coordinate() const {
  int m = -1;
  for (int i = 0; i < kMaxDim; ++i)
    if (exp(slot_z(i)) > 0 || exp(slot_zbar(i)) > 0) m = i;
  return m;
}

std::string Monomial::str(const std::string& holo_name) const {
  std::string out;
  auto piece = [&out](const std::string& name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  };
  for (int i = 0; i < kMaxDim; ++i) piece(holo_name + std::to_string(i + 1), exp(slot_z(i)));
  for (int i = 0; i < kMaxDim; ++i)
    piece(holo_name + "b" + std::to_string(i + 1), exp(slot_zbar(i)));
  piece("t", exp(kSlotT));
  piece("N", exp(kSlotN));
  return out;
}

Poly Poly::constant(Scalar c, int truncation) {
  Poly p(truncation);
  p.insert_term(Monomial{}, c);
  return p;
}

Poly Poly::variable(int slot, int truncation) {
  Monomial m;
  m.set_exp(slot, 1);
  return term(m, Scalar(1), truncation);
}

Poly Poly::term(Monomial m, Scalar c, int truncation) {
  Poly p(truncation);
  p.insert_term(m, c);
  return p;
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Poly::insert_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (m.t_degree() > trunc_) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  trunc_ = std::min(trunc_, o.trunc_);
  // re-filter existing terms against the tightened truncation
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.t_degree() > trunc_)
      it = terms_.erase(it);
    else
      ++it;
  }
  for (const auto& [m, c] : o.terms_) insert_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  trunc_ = std::min(trunc_, o.trunc_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.t_degree() > trunc_)
      it = terms_.erase(it);
    else
      ++it;
  }
  for (const auto& [m, c] : o.terms_) insert_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(std::min(a.truncation(), b.truncation()));
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.insert_term(ma.times(mb), ca * cb);
  return r;
}

Poly Poly::operator*(const Scalar& c) const {
  Poly r(trunc_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Poly Poly::derivative(int slot) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) {
    int e = m.exp(slot);
    if (e == 0) continue;
    Monomial d = m;
    d.set_exp(slot, e - 1);
    r.insert_term(d, c * Scalar(e));
  }
  return r;
}

Poly Poly::conj() const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) r.insert_term(m.conj(), c.conj());
  return r;
}

Poly Poly::times_var(int slot, int k) const {
  Poly r(trunc_);
  if (k == 0) return *this;
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    d.set_exp(slot, m.exp(slot) + k);
    r.insert_term(d, c);
  }
  return r;
}

Poly Poly::t_coefficient(int k) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.t_degree() != k) continue;
    Monomial d = m;
    d.set_exp(kSlotT, 0);
    r.insert_term(d, c);
  }
  return r;
}

Poly Poly::n_coefficient(int k) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.n_degree() != k) continue;
    Monomial d = m;
    d.set_exp(kSlotN, 0);
    r.insert_term(d, c);
  }
  return r;
}

Poly Poly::truncated(int order) const {
  Poly r(order);
  for (const auto& [m, c] : terms_) r.insert_term(m, c);
  return r;
}

int Poly::min_t_degree() const {
  int d = kNoTDegree;
  for (const auto& [m, c] : terms_) d = std::min(d, m.t_degree());
  return d;
}

Poly Poly::relabeled(const std::vector<int>& perm) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) r.insert_term(m.relabeled(perm), c);
  return r;
}

Poly Poly::shifted(int offset) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) r.insert_term(m.shifted(offset), c);
  return r;
}

int Poly::max_coordinate() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.max_coordinate());
  return d;
}

bool Poly::uses_t() const {
  for (const auto& [m, c] : terms_)
    if (m.uses_t()) return true;
  return false;
}

bool Poly::uses_n() const {
  for (const auto& [m, c] : terms_)
    if (m.uses_n()) return true;
  return false;
}

static Scalar scalar_pow(const Scalar& base, int e) {
  Scalar r(1);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

Scalar Poly::eval(const std::vector<Scalar>& z_values,
                  const std::optional<Rational>& n_value) const {
  Scalar total;
  for (const auto& [m, c] : terms_) {
    if (m.t_degree() > 0) continue;  // t = 0
    if (m.max_coordinate() >= static_cast<int>(z_values.size()))
      throw std::invalid_argument("evaluation point has too few coordinates");
    Scalar v = c;
    for (int i = 0; i < kMaxDim; ++i) {
      int ez = m.exp(slot_z(i));
      int eb = m.exp(slot_zbar(i));
      if (ez > 0) v *= scalar_pow(z_values[static_cast<std::size_t>(i)], ez);
      if (eb > 0) v *= scalar_pow(z_values[static_cast<std::size_t>(i)].conj(), eb);
    }
    if (m.n_degree() > 0) {
      if (!n_value) throw std::invalid_argument("polynomial contains N but no value was supplied");
      v *= scalar_pow(Scalar(*n_value), m.n_degree());
    }
    total += v;
  }
  return total;
}

Poly Poly::substitute(const std::vector<Poly>& z_images,
                      const std::vector<Poly>& zbar_images) const {
  Poly r(trunc_);
  for (const auto& [m, c] : terms_) {
    if (m.max_coordinate() >= static_cast<int>(z_images.size()))
      throw std::invalid_argument("substitution images missing for a used coordinate");
    Poly acc = Poly::constant(c, trunc_);
    for (int i = 0; i < kMaxDim; ++i) {
      int ez = m.exp(slot_z(i));
      int eb = m.exp(slot_zbar(i));
      if (ez > 0) acc = acc * pow(z_images[static_cast<std::size_t>(i)], ez);
      if (eb > 0) acc = acc * pow(zbar_images[static_cast<std::size_t>(i)], eb);
    }
    acc = acc.times_var(kSlotT, m.t_degree()).times_var(kSlotN, m.n_degree());
    r += acc;
  }
  return r;
}

std::string Poly::str(const std::string& holo_name) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string ms = m.str(holo_name);
    if (ms.empty()) {
      out += c.str();
    } else if (c == Scalar(1)) {
      out += ms;
    } else {
      out += "(" + c.str() + ")*" + ms;
    }
  }
  return out;
}

Poly pow(const Poly& base, int k) {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Poly r = Poly::constant(Scalar(1), base.truncation());
  for (int j = 0; j < k; ++j) r = r * base;
  return r;
}

}  // namespace shm
