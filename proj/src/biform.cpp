#include "shm/biform.hpp"

#include <algorithm>
#include <stdexcept>

namespace shm {

int index_lex_cmp(std::uint32_t a, std::uint32_t b) {
  while (a != 0 || b != 0) {
    if (a == 0) return -1;  // a is a strict prefix of b
    if (b == 0) return 1;
    int ia = std::countr_zero(a);
    int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib ? -1 : 1;
    a &= a - 1;
    b &= b - 1;
  }
  return 0;
}

int merge_sign(std::uint32_t first, std::uint32_t second) {
  int inv = 0;
  for (std::uint32_t b = second; b != 0; b &= b - 1) {
    int j = std::countr_zero(b);
    inv += std::popcount(first >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

BiForm::BiForm(int dim, int truncation) : dim_(dim), trunc_(truncation) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("patch dimension out of range");
}

BiForm BiForm::scalar(int dim, Poly f) {
  BiForm r(dim, f.truncation());
  r.add_term(FormMonomial{}, f);
  return r;
}

BiForm BiForm::monomial(int dim, FormMonomial m, Poly c) {
  BiForm r(dim, c.truncation());
  r.add_term(m, c);
  return r;
}

BiForm BiForm::coframe(int dim, std::initializer_list<int> holo, std::initializer_list<int> anti,
                       Scalar c, int truncation) {
  FormMonomial m;
  for (int i : holo) {
    if (i < 0 || i >= dim) throw std::invalid_argument("coframe index out of range");
    if (m.holo & (1u << i)) throw std::invalid_argument("repeated coframe index");
    m.holo |= 1u << i;
  }
  for (int i : anti) {
    if (i < 0 || i >= dim) throw std::invalid_argument("coframe index out of range");
    if (m.anti & (1u << i)) throw std::invalid_argument("repeated coframe index");
    m.anti |= 1u << i;
  }
  return monomial(dim, m, Poly::constant(c, truncation));
}

Poly BiForm::coefficient(const FormMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Poly(trunc_) : it->second;
}

void BiForm::add_term(const FormMonomial& m, const Poly& c) {
  if (c.is_zero()) return;
  int hi = 32 - std::countl_zero(m.holo | m.anti);
  if (hi > dim_) throw std::invalid_argument("coframe index out of range for dimension");
  if (c.max_coordinate() >= dim_)
    throw std::invalid_argument("coefficient uses a coordinate beyond the patch dimension");
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  trunc_ = std::min(trunc_, c.truncation());
}

BiForm BiForm::operator-() const {
  BiForm r(dim_, trunc_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

BiForm& BiForm::operator+=(const BiForm& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiForm& BiForm::operator-=(const BiForm& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiForm BiForm::operator*(const Scalar& c) const {
  BiForm r(dim_, trunc_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

BiForm BiForm::operator*(const Poly& f) const {
  BiForm r(dim_, trunc_);
  for (const auto& [m, v] : terms_) r.add_term(m, v * f);
  return r;
}

bool BiForm::is_pure_bidegree(int p, int q) const {
  for (const auto& [m, c] : terms_)
    if (m.p() != p || m.q() != q) return false;
  return true;
}

std::optional<std::pair<int, int>> BiForm::pure_bidegree() const {
  std::optional<std::pair<int, int>> bd;
  for (const auto& [m, c] : terms_) {
    std::pair<int, int> cur{m.p(), m.q()};
    if (!bd)
      bd = cur;
    else if (*bd != cur)
      return std::nullopt;
  }
  return bd;
}

bool BiForm::uses_t() const {
  for (const auto& [m, c] : terms_)
    if (c.uses_t()) return true;
  return false;
}

bool BiForm::uses_n() const {
  for (const auto& [m, c] : terms_)
    if (c.uses_n()) return true;
  return false;
}

int BiForm::max_coordinate() const {
  int hi = -1;
  for (const auto& [m, c] : terms_) {
    hi = std::max(hi, 31 - std::countl_zero(m.holo | m.anti | 1u));
    hi = std::max(hi, c.max_coordinate());
  }
  return hi;
}

BiForm wedge(const BiForm& a, const BiForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  BiForm r(a.dim(), std::min(a.truncation(), b.truncation()));
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if ((ma.holo & mb.holo) != 0 || (ma.anti & mb.anti) != 0) continue;
      // dz^{I1} dzb^{J1} dz^{I2} dzb^{J2}: move dz^{I2} past dzb^{J1}, then
      // merge the two increasing lists on each side.
      int s = (ma.q() * mb.p()) & 1 ? -1 : 1;
      s *= merge_sign(ma.holo, mb.holo);
      s *= merge_sign(ma.anti, mb.anti);
      FormMonomial m{ma.holo | mb.holo, ma.anti | mb.anti};
      Poly c = ca * cb;
      r.add_term(m, s < 0 ? -c : c);
    }
  }
  return r;
}

BiForm del(const BiForm& a) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) {
    for (int i = 0; i < a.dim(); ++i) {
      if (m.holo & (1u << i)) continue;  // dz^i repeats
      Poly dc = c.derivative(slot_z(i));
      if (dc.is_zero()) continue;
      // dz^i goes in front: only inversions against smaller holo indices.
      int s = (std::popcount(m.holo & ((1u << i) - 1u)) & 1) ? -1 : 1;
      FormMonomial d{m.holo | (1u << i), m.anti};
      r.add_term(d, s < 0 ? -dc : dc);
    }
  }
  return r;
}

BiForm delbar(const BiForm& a) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) {
    int p = m.p();
    for (int i = 0; i < a.dim(); ++i) {
      if (m.anti & (1u << i)) continue;
      Poly dc = c.derivative(slot_zbar(i));
      if (dc.is_zero()) continue;
      // dzb^i crosses the whole holomorphic block, then smaller anti indices.
      int inv = p + std::popcount(m.anti & ((1u << i) - 1u));
      int s = (inv & 1) ? -1 : 1;
      FormMonomial d{m.holo, m.anti | (1u << i)};
      r.add_term(d, s < 0 ? -dc : dc);
    }
  }
  return r;
}

BiForm exterior_d(const BiForm& a) { return del(a) + delbar(a); }

BiForm conj(const BiForm& a) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) {
    int s = ((m.p() * m.q()) & 1) ? -1 : 1;
    Poly cc = c.conj();
    r.add_term(FormMonomial{m.anti, m.holo}, s < 0 ? -cc : cc);
  }
  return r;
}

BiForm j_action(const BiForm& a) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms())
    r.add_term(m, c * Scalar::i_pow(m.q() - m.p()));
  return r;
}

BiForm power(const BiForm& a, int k) {
  if (k < 0) throw std::invalid_argument("negative form power");
  BiForm r = BiForm::scalar(a.dim(), Poly::constant(Scalar(1), a.truncation()));
  for (int j = 0; j < k; ++j) {
    r = wedge(r, a);
    if (r.is_zero()) break;
  }
  return r;
}

BiForm t_derivative_at_zero(const BiForm& a) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.t_coefficient(1));
  return r;
}

BiForm n_coefficient(const BiForm& a, int k) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.n_coefficient(k));
  return r;
}

BiForm coeff_derivative(const BiForm& a, int slot) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.derivative(slot));
  return r;
}

BiForm retruncate(const BiForm& a, int order) {
  BiForm r(a.dim(), order);
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.truncated(order));
  return r;
}

namespace {

// Image mask and resorting sign of an index set under a relabeling.
std::pair<std::uint32_t, int> relabel_mask(std::uint32_t mask, const std::vector<int>& perm) {
  std::vector<int> mapped;
  for (std::uint32_t b = mask; b != 0; b &= b - 1) {
    int i = std::countr_zero(b);
    mapped.push_back(i < static_cast<int>(perm.size()) ? perm[static_cast<std::size_t>(i)] : i);
  }
  int inv = 0;
  std::uint32_t out = 0;
  for (std::size_t x = 0; x < mapped.size(); ++x) {
    for (std::size_t y = x + 1; y < mapped.size(); ++y)
      if (mapped[x] > mapped[y]) ++inv;
    out |= 1u << mapped[x];
  }
  return {out, (inv & 1) ? -1 : 1};
}

}  // namespace

BiForm relabel(const BiForm& a, const std::vector<int>& perm) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) {
    auto [h, sh] = relabel_mask(m.holo, perm);
    auto [t, st] = relabel_mask(m.anti, perm);
    Poly cc = c.relabeled(perm);
    int s = sh * st;
    r.add_term(FormMonomial{h, t}, s < 0 ? -cc : cc);
  }
  return r;
}

BiForm shift_embed(const BiForm& a, int new_dim, int offset) {
  BiForm r(new_dim, a.truncation());
  for (const auto& [m, c] : a.terms()) {
    // shifting preserves relative order, so no resorting sign
    r.add_term(FormMonomial{m.holo << offset, m.anti << offset}, c.shifted(offset));
  }
  return r;
}

HoloMap make_holo_map(int source_dim, int target_dim, std::vector<Poly> components) {
  if (source_dim < 1 || source_dim > kMaxDim || target_dim < 1 || target_dim > kMaxDim)
    throw std::invalid_argument("map dimension out of range");
  if (static_cast<int>(components.size()) != target_dim)
    throw std::invalid_argument("holomorphic map needs one component per target coordinate");
  for (const Poly& f : components) {
    if (f.uses_t() || f.uses_n())
      throw std::invalid_argument("holomorphic map components cannot involve t or N");
    for (const auto& [m, c] : f.terms())
      for (int i = 0; i < kMaxDim; ++i)
        if (m.exp(slot_zbar(i)) > 0)
          throw std::invalid_argument("holomorphic map component uses a conjugate variable");
    if (f.max_coordinate() >= source_dim)
      throw std::invalid_argument("holomorphic map component uses a coordinate beyond source_dim");
  }
  return HoloMap{source_dim, target_dim, std::move(components)};
}

BiForm pullback(const HoloMap& f, const BiForm& a) {
  if (a.dim() != f.target_dim) throw std::invalid_argument("dimension mismatch");
  const int m = f.source_dim;
  std::vector<Poly> z_images, zbar_images;
  std::vector<BiForm> dz_images, dzbar_images;
  for (int i = 0; i < f.target_dim; ++i) {
    const Poly& comp = f.components[static_cast<std::size_t>(i)];
    z_images.push_back(comp);
    zbar_images.push_back(comp.conj());
    BiForm dzi(m, a.truncation());
    for (int j = 0; j < m; ++j) {
      Poly dj = comp.derivative(slot_z(j));
      if (!dj.is_zero()) dzi.add_term(FormMonomial{1u << j, 0}, dj);
    }
    dzbar_images.push_back(conj(dzi));
    dz_images.push_back(std::move(dzi));
  }
  BiForm r(m, a.truncation());
  for (const auto& [mono, c] : a.terms()) {
    BiForm acc = BiForm::scalar(m, c.substitute(z_images, zbar_images));
    for (std::uint32_t b = mono.holo; b != 0 && !acc.is_zero(); b &= b - 1)
      acc = wedge(acc, dz_images[static_cast<std::size_t>(std::countr_zero(b))]);
    for (std::uint32_t b = mono.anti; b != 0 && !acc.is_zero(); b &= b - 1)
      acc = wedge(acc, dzbar_images[static_cast<std::size_t>(std::countr_zero(b))]);
    r += acc;
  }
  return r;
}

std::vector<std::vector<Scalar>> hermitian_matrix_at(const BiForm& a, const Point& p,
                                                     const std::optional<Rational>& n_value) {
  if (!a.is_pure_bidegree(1, 1)) throw std::invalid_argument("hermitian matrix needs a (1,1) form");
  const int n = a.dim();
  if (p.dim() < n) throw std::invalid_argument("point has too few coordinates");
  std::vector<std::vector<Scalar>> g(static_cast<std::size_t>(n),
                                     std::vector<Scalar>(static_cast<std::size_t>(n)));
  for (const auto& [m, c] : a.terms()) {
    int j = std::countr_zero(m.holo);
    int k = std::countr_zero(m.anti);
    // a = i * g_{j kbar} dz^j ∧ dzb^k, so g = -i * coefficient
    g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
        (-Scalar::i()) * c.eval(p.coords, n_value);
  }
  return g;
}

namespace {

Scalar determinant(std::vector<std::vector<Scalar>> m) {
  const std::size_t n = m.size();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Scalar inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Scalar f = m[r][col] * inv;
      for (std::size_t c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  return det;
}

}  // namespace

bool is_positive_definite_at(const BiForm& a, const Point& p,
                             const std::optional<Rational>& n_value) {
  if (conj(a) != a) throw std::invalid_argument("positivity needs a conj-real form");
  auto g = hermitian_matrix_at(a, p, n_value);
  const std::size_t n = g.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Scalar>> lead(k, std::vector<Scalar>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) lead[r][c] = g[r][c];
    Scalar d = determinant(std::move(lead));
    if (!d.is_real()) throw std::logic_error("principal minor of a hermitian matrix must be real");
    if (sgn(d.re) <= 0) return false;
  }
  return true;
}

std::string to_string(const BiForm& a, const std::string& holo_name) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    std::string frame;
    for (std::uint32_t b = m.holo; b != 0; b &= b - 1) {
      if (!frame.empty()) frame += "^";
      frame += "d" + holo_name + std::to_string(std::countr_zero(b) + 1);
    }
    for (std::uint32_t b = m.anti; b != 0; b &= b - 1) {
      if (!frame.empty()) frame += "^";
      frame += "d" + holo_name + "b" + std::to_string(std::countr_zero(b) + 1);
    }
    if (frame.empty()) frame = "1";
    out += "(" + c.str(holo_name) + ") " + frame;
  }
  return out;
}

}  // namespace shm
