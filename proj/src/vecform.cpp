#include "shm/vecform.hpp"

#include <algorithm>
#include <stdexcept>

namespace shm {

bool VecForm::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

int VecForm::truncation() const {
  int t = kDefaultTruncation;
  for (const auto& c : comps) t = std::min(t, c.truncation());
  return t;
}

VecForm make_vec_form(int dim, int q, std::vector<BiForm> comps) {
  if (static_cast<int>(comps.size()) != dim)
    throw std::invalid_argument("vector form needs one component per coordinate");
  for (const BiForm& c : comps) {
    if (c.dim() != dim) throw std::invalid_argument("dimension mismatch");
    if (!c.is_pure_bidegree(0, q))
      throw std::invalid_argument("vector form component must be pure (0,q)");
  }
  return VecForm{dim, q, std::move(comps)};
}

VecForm zero_vec_form(int dim, int q, int truncation) {
  return VecForm{dim, q, std::vector<BiForm>(static_cast<std::size_t>(dim),
                                             BiForm(dim, truncation))};
}

ConjVecForm conj(const VecForm& phi) {
  ConjVecForm r{phi.dim, phi.q, {}};
  r.comps.reserve(phi.comps.size());
  for (const auto& c : phi.comps) r.comps.push_back(conj(c));
  return r;
}

VecForm operator-(const VecForm& phi) {
  VecForm r = phi;
  for (auto& c : r.comps) c = -c;
  return r;
}

VecForm operator+(const VecForm& a, const VecForm& b) {
  if (a.dim != b.dim || a.q != b.q) throw std::invalid_argument("vector form mismatch");
  VecForm r = a;
  for (std::size_t i = 0; i < r.comps.size(); ++i) r.comps[i] += b.comps[i];
  return r;
}

VecForm operator-(const VecForm& a, const VecForm& b) { return a + (-b); }

VecForm scale(const VecForm& phi, const Scalar& c) {
  VecForm r = phi;
  for (auto& comp : r.comps) comp = comp * c;
  return r;
}

VecForm delbar(const VecForm& phi) {
  VecForm r{phi.dim, phi.q + 1, {}};
  r.comps.reserve(phi.comps.size());
  for (const auto& c : phi.comps) r.comps.push_back(delbar(c));
  return r;
}

namespace {

BiForm biform_t_coefficient(const BiForm& a, int k) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.t_coefficient(k));
  return r;
}

}  // namespace

VecForm t_coefficient(const VecForm& phi, int k) {
  VecForm r{phi.dim, phi.q, {}};
  r.comps.reserve(phi.comps.size());
  for (const auto& c : phi.comps) r.comps.push_back(biform_t_coefficient(c, k));
  return r;
}

BiForm contract(const VecForm& phi, const BiForm& a) {
  if (phi.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  BiForm r(a.dim(), std::min(a.truncation(), phi.truncation()));
  for (int i = 0; i < a.dim(); ++i) {
    const std::uint32_t bit = 1u << i;
    BiForm interior(a.dim(), a.truncation());
    for (const auto& [m, c] : a.terms()) {
      if (!(m.holo & bit)) continue;
      int pos = std::popcount(m.holo & (bit - 1u));
      interior.add_term(FormMonomial{m.holo & ~bit, m.anti}, (pos & 1) ? -c : c);
    }
    if (!interior.is_zero())
      r += wedge(phi.comps[static_cast<std::size_t>(i)], interior);
  }
  return r;
}

BiForm contract(const ConjVecForm& phibar, const BiForm& a) {
  if (phibar.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  BiForm r(a.dim(), a.truncation());
  for (int k = 0; k < a.dim(); ++k) {
    const std::uint32_t bit = 1u << k;
    BiForm interior(a.dim(), a.truncation());
    for (const auto& [m, c] : a.terms()) {
      if (!(m.anti & bit)) continue;
      int pos = m.p() + std::popcount(m.anti & (bit - 1u));
      interior.add_term(FormMonomial{m.holo, m.anti & ~bit}, (pos & 1) ? -c : c);
    }
    if (!interior.is_zero())
      r += wedge(phibar.comps[static_cast<std::size_t>(k)], interior);
  }
  return r;
}

BiForm exp_contract(const VecForm& phi, const BiForm& a) {
  if (phi.q != 1) throw std::invalid_argument("exp_contract expects a (0,1) vector form");
  BiForm acc = a;
  BiForm cur = a;
  for (int k = 1; k <= kMaxDim + 1; ++k) {
    cur = contract(phi, cur) * Scalar::of(1, k);
    if (cur.is_zero()) return acc;
    acc += cur;
  }
  return acc;  // holomorphic degree is exhausted by then
}

BiForm exp_contract(const ConjVecForm& phibar, const BiForm& a) {
  if (phibar.q != 1) throw std::invalid_argument("exp_contract expects a conjugate (0,1) form");
  BiForm acc = a;
  BiForm cur = a;
  for (int k = 1; k <= kMaxDim + 1; ++k) {
    cur = contract(phibar, cur) * Scalar::of(1, k);
    if (cur.is_zero()) return acc;
    acc += cur;
  }
  return acc;
}

CoframeSubstitution identity_substitution(int dim, int truncation) {
  CoframeSubstitution s{dim, {}, {}};
  for (int i = 0; i < dim; ++i) {
    s.holo_images.push_back(
        BiForm::monomial(dim, FormMonomial{1u << i, 0}, Poly::constant(Scalar(1), truncation)));
    s.anti_images.push_back(
        BiForm::monomial(dim, FormMonomial{0, 1u << i}, Poly::constant(Scalar(1), truncation)));
  }
  return s;
}

CoframeSubstitution extension_substitution(const VecForm& phi) {
  if (phi.q != 1) throw std::invalid_argument("extension substitution expects q = 1");
  CoframeSubstitution s = identity_substitution(phi.dim, phi.truncation());
  ConjVecForm pb = conj(phi);
  for (int i = 0; i < phi.dim; ++i) {
    s.holo_images[static_cast<std::size_t>(i)] += phi.comps[static_cast<std::size_t>(i)];
    s.anti_images[static_cast<std::size_t>(i)] += pb.comps[static_cast<std::size_t>(i)];
  }
  return s;
}

BiForm simultaneous_contract(const CoframeSubstitution& s, const BiForm& a) {
  if (s.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) {
    BiForm acc = BiForm::scalar(a.dim(), c);
    for (std::uint32_t b = m.holo; b != 0 && !acc.is_zero(); b &= b - 1)
      acc = wedge(acc, s.holo_images[static_cast<std::size_t>(std::countr_zero(b))]);
    for (std::uint32_t b = m.anti; b != 0 && !acc.is_zero(); b &= b - 1)
      acc = wedge(acc, s.anti_images[static_cast<std::size_t>(std::countr_zero(b))]);
    r += acc;
  }
  return r;
}

BiForm extension_map(const VecForm& phi, const BiForm& a) {
  if (phi.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  if (phi.q != 1) throw std::invalid_argument("extension map expects q = 1");
  ConjVecForm pb = conj(phi);
  const int trunc = std::min(a.truncation(), phi.truncation());
  BiForm r(a.dim(), trunc);
  for (const auto& [m, c] : a.terms()) {
    BiForm holo_part = exp_contract(
        phi, BiForm::monomial(a.dim(), FormMonomial{m.holo, 0}, Poly::constant(Scalar(1), trunc)));
    BiForm anti_part = exp_contract(
        pb, BiForm::monomial(a.dim(), FormMonomial{0, m.anti}, Poly::constant(Scalar(1), trunc)));
    r += wedge(holo_part, anti_part) * c;
  }
  return r;
}

VecForm bracket(const VecForm& phi, const VecForm& psi) {
  if (phi.dim != psi.dim) throw std::invalid_argument("dimension mismatch");
  const int pq = phi.q * psi.q;
  VecForm r = zero_vec_form(phi.dim, phi.q + psi.q,
                            std::min(phi.truncation(), psi.truncation()));
  for (int j = 0; j < phi.dim; ++j) {
    BiForm acc(phi.dim, r.comps[static_cast<std::size_t>(j)].truncation());
    for (int i = 0; i < phi.dim; ++i) {
      acc += wedge(phi.comps[static_cast<std::size_t>(i)],
                   coeff_derivative(psi.comps[static_cast<std::size_t>(j)], slot_z(i)));
      BiForm second = wedge(psi.comps[static_cast<std::size_t>(i)],
                            coeff_derivative(phi.comps[static_cast<std::size_t>(j)], slot_z(i)));
      if (pq & 1)
        acc += second;
      else
        acc -= second;
    }
    r.comps[static_cast<std::size_t>(j)] = acc;
  }
  return r;
}

BiForm lie_derivative_10(const VecForm& phi, const BiForm& a) {
  BiForm first = del(contract(phi, a));
  if (phi.q & 1) first = -first;
  return first + contract(phi, del(a));
}

BiForm lie_derivative_01(const VecForm& phi, const BiForm& a) {
  BiForm first = delbar(contract(phi, a));
  if (phi.q & 1) first = -first;
  return first + contract(phi, delbar(a));
}

BiForm lie_derivative(const VecForm& phi, const BiForm& a) {
  BiForm first = exterior_d(contract(phi, a));
  if (phi.q & 1) first = -first;
  return first + contract(phi, exterior_d(a));
}

bool EndoField::is_zero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

EndoField endo_identity(int dim, EndoSide side, int truncation) {
  EndoField e{dim, side, truncation,
              std::vector<std::vector<Poly>>(
                  static_cast<std::size_t>(dim),
                  std::vector<Poly>(static_cast<std::size_t>(dim), Poly(truncation)))};
  for (int i = 0; i < dim; ++i)
    e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        Poly::constant(Scalar(1), truncation);
  return e;
}

EndoField endo_sub(const EndoField& a, const EndoField& b) {
  if (a.dim != b.dim || a.side != b.side) throw std::invalid_argument("endomorphism mismatch");
  EndoField r = a;
  r.trunc = std::min(a.trunc, b.trunc);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      r.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
          b.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return r;
}

EndoField endo_mul(const EndoField& a, const EndoField& b) {
  if (a.dim != b.dim || a.side != b.side) throw std::invalid_argument("endomorphism mismatch");
  const int n = a.dim;
  EndoField r{n, a.side, std::min(a.trunc, b.trunc),
              std::vector<std::vector<Poly>>(
                  static_cast<std::size_t>(n),
                  std::vector<Poly>(static_cast<std::size_t>(n), Poly(std::min(a.trunc, b.trunc))))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly acc(r.trunc);
      for (int k = 0; k < n; ++k)
        acc += a.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
               b.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      r.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
    }
  return r;
}

namespace {

Poly single_coefficient(const BiForm& f, FormMonomial m) { return f.coefficient(m); }

}  // namespace

EndoField endo_compose(const VecForm& phi, const ConjVecForm& phibar) {
  if (phi.dim != phibar.dim) throw std::invalid_argument("dimension mismatch");
  if (phi.q != 1 || phibar.q != 1)
    throw std::invalid_argument("endomorphism composition expects (0,1) forms");
  const int n = phi.dim;
  const int trunc = phi.truncation();
  EndoField r{n, EndoSide::Holo, trunc,
              std::vector<std::vector<Poly>>(static_cast<std::size_t>(n),
                                             std::vector<Poly>(static_cast<std::size_t>(n),
                                                               Poly(trunc)))};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly acc(trunc);
      for (int k = 0; k < n; ++k)
        acc += single_coefficient(phi.comps[static_cast<std::size_t>(i)],
                                  FormMonomial{0, 1u << k}) *
               single_coefficient(phibar.comps[static_cast<std::size_t>(k)],
                                  FormMonomial{1u << j, 0});
      r.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
    }
  return r;
}

EndoField endo_compose(const ConjVecForm& phibar, const VecForm& phi) {
  if (phi.dim != phibar.dim) throw std::invalid_argument("dimension mismatch");
  if (phi.q != 1 || phibar.q != 1)
    throw std::invalid_argument("endomorphism composition expects (0,1) forms");
  const int n = phi.dim;
  const int trunc = phi.truncation();
  EndoField r{n, EndoSide::Anti, trunc,
              std::vector<std::vector<Poly>>(static_cast<std::size_t>(n),
                                             std::vector<Poly>(static_cast<std::size_t>(n),
                                                               Poly(trunc)))};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      Poly acc(trunc);
      for (int i = 0; i < n; ++i)
        acc += single_coefficient(phibar.comps[static_cast<std::size_t>(k)],
                                  FormMonomial{1u << i, 0}) *
               single_coefficient(phi.comps[static_cast<std::size_t>(i)],
                                  FormMonomial{0, 1u << j});
      r.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = acc;
    }
  return r;
}

EndoField neumann_inverse(const EndoField& i_minus_m) {
  EndoField m = endo_sub(endo_identity(i_minus_m.dim, i_minus_m.side, i_minus_m.trunc),
                         i_minus_m);
  for (const auto& row : m.entries)
    for (const auto& e : row)
      if (!e.is_zero() && e.min_t_degree() < 1)
        throw std::invalid_argument("neumann inverse needs I - M with M of t-order >= 1");
  EndoField inv = endo_identity(m.dim, m.side, m.trunc);
  EndoField p = m;
  for (int k = 0; k <= m.trunc && !p.is_zero(); ++k) {
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j)
        inv.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
            p.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    p = endo_mul(p, m);
  }
  return inv;
}

CoframeSubstitution endo_substitution(const EndoField& e) {
  CoframeSubstitution s = identity_substitution(e.dim, e.trunc);
  if (e.side == EndoSide::Holo) {
    for (int i = 0; i < e.dim; ++i) {
      BiForm img(e.dim, e.trunc);
      for (int j = 0; j < e.dim; ++j)
        img.add_term(FormMonomial{1u << j, 0},
                     e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      s.holo_images[static_cast<std::size_t>(i)] = img;
    }
  } else {
    for (int k = 0; k < e.dim; ++k) {
      BiForm img(e.dim, e.trunc);
      for (int j = 0; j < e.dim; ++j)
        img.add_term(FormMonomial{0, 1u << j},
                     e.entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
      s.anti_images[static_cast<std::size_t>(k)] = img;
    }
  }
  return s;
}

BiForm conjugation_residual(const VecForm& phi, const BiForm& a) {
  if (phi.dim != a.dim()) throw std::invalid_argument("dimension mismatch");
  BiForm lhs = exp_contract(-phi, exterior_d(exp_contract(phi, a)));
  VecForm half_bracket = scale(bracket(phi, phi), Scalar::of(1, 2));
  BiForm rhs = exterior_d(a) - lie_derivative(phi, a) - contract(half_bracket, a);
  return lhs - rhs;
}

}  // namespace shm
