#include "shm/identities.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace shm {

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("bad uniform bounds");
  return lo + static_cast<int>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool Rng::chance(int percent) { return uniform(0, 99) < percent; }

Rational Rng::rational(int max_num, int max_den) {
  return make_rational(uniform(-max_num, max_num), uniform(1, max_den));
}

Scalar Rng::scalar(int max_num, int max_den) {
  Rational re = rational(max_num, max_den);
  Rational im = chance(60) ? rational(max_num, max_den) : Rational(0);
  return Scalar(re, im);
}

Monomial Rng::monomial(int n, int max_deg, bool allow_t) {
  Monomial m;
  int d = uniform(0, max_deg);
  for (int step = 0; step < d; ++step) {
    int roll = uniform(0, 2 * n - (allow_t ? 0 : 1));
    int slot;
    if (roll < n)
      slot = slot_z(roll);
    else if (roll < 2 * n)
      slot = slot_zbar(roll - n);
    else
      slot = kSlotT;
    m.set_exp(slot, m.exp(slot) + 1);
  }
  return m;
}

Poly Rng::poly(int n, int max_deg, int trunc, bool allow_t, int max_terms) {
  Poly p(trunc);
  int terms = uniform(1, max_terms);
  for (int k = 0; k < terms; ++k)
    p += Poly::term(monomial(n, max_deg, allow_t), scalar(), trunc);
  return p;
}

namespace {

std::uint32_t random_subset(Rng& rng, int n, int size) {
  std::uint32_t mask = 0;
  while (std::popcount(mask) < size) mask |= 1u << rng.uniform(0, n - 1);
  return mask;
}

BiForm times_t(const BiForm& a, int k) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.times_var(kSlotT, k));
  return r;
}

BiForm standard_form(int n, int trunc, Scalar lambda = Scalar(1)) {
  BiForm r(n, trunc);
  for (int i = 0; i < n; ++i)
    r.add_term(FormMonomial{1u << i, 1u << i}, Poly::constant(Scalar::i() * lambda, trunc));
  return r;
}

}  // namespace

BiForm Rng::form(int n, int p, int q, int max_deg, int trunc, bool allow_t) {
  BiForm r(n, trunc);
  if (p > n || q > n) return r;
  int terms = uniform(1, 2);
  for (int k = 0; k < terms; ++k) {
    FormMonomial m{p > 0 ? random_subset(*this, n, p) : 0u,
                   q > 0 ? random_subset(*this, n, q) : 0u};
    r.add_term(m, poly(n, max_deg, trunc, allow_t));
  }
  return r;
}

BiForm Rng::mixed_form(int n, int max_deg, int trunc, bool allow_t) {
  BiForm r(n, trunc);
  int terms = uniform(1, 3);
  for (int k = 0; k < terms; ++k) {
    int p = uniform(0, std::min(n, 3));
    int q = uniform(0, std::min(n, 3));
    r += form(n, p, q, max_deg, trunc, allow_t);
  }
  return r;
}

BiForm Rng::real_11(int n, int max_deg, int trunc, bool allow_t) {
  BiForm r = form(n, 1, 1, max_deg, trunc, allow_t);
  r += conj(r);
  r += standard_form(n, trunc, Scalar(uniform(1, 2)));
  return r;
}

BiForm Rng::closed_real_11(int n, int max_deg, int trunc) {
  Poly u = poly(n, max_deg, trunc, false);
  Poly rho = u + u.conj();
  BiForm r = del(delbar(BiForm::scalar(n, rho))) * Scalar::i();
  r += standard_form(n, trunc, Scalar(uniform(0, 2)));
  BiForm c = form(n, 1, 1, 0, trunc, false);
  r += c + conj(c);
  return r;
}

BiForm Rng::special_instance(int n, int trunc) {
  BiForm r = standard_form(n, trunc, Scalar(uniform(1, 2)));
  if (n >= 2) {
    int a = uniform(0, n - 1);
    int b = uniform(0, n - 1);
    while (b == a) b = uniform(0, n - 1);
    Poly g = Poly::variable(slot_z(a), trunc) + Poly::variable(slot_zbar(a), trunc);
    r.add_term(FormMonomial{1u << b, 1u << b}, g * (Scalar::i() * Scalar(uniform(-2, 2))));
  }
  return r;
}

VecForm Rng::vec_form(int n, int q, int max_deg, int trunc, bool allow_t) {
  std::vector<BiForm> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (chance(25))
      comps.push_back(BiForm(n, trunc));
    else
      comps.push_back(form(n, 0, q, max_deg, trunc, allow_t));
  }
  return make_vec_form(n, q, std::move(comps));
}

VecForm Rng::family(int n, int max_deg, int trunc) {
  VecForm psi1 = vec_form(n, 1, max_deg, trunc, false);
  VecForm psi2 = vec_form(n, 1, max_deg, trunc, false);
  std::vector<BiForm> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    BiForm c = times_t(psi1.comps[static_cast<std::size_t>(i)], 1);
    if (chance(50)) c += times_t(psi2.comps[static_cast<std::size_t>(i)], 2);
    comps.push_back(std::move(c));
  }
  return make_vec_form(n, 1, std::move(comps));
}

HoloMap Rng::holo_map(int source_dim, int target_dim, int max_deg) {
  std::vector<Poly> comps;
  comps.reserve(static_cast<std::size_t>(target_dim));
  for (int i = 0; i < target_dim; ++i) {
    Poly p(kDefaultTruncation);
    int terms = uniform(1, 3);
    for (int k = 0; k < terms; ++k) {
      Monomial m;
      int d = uniform(0, max_deg);
      for (int s = 0; s < d; ++s) {
        int v = uniform(0, source_dim - 1);
        m.set_exp(slot_z(v), m.exp(slot_z(v)) + 1);
      }
      p += Poly::term(m, scalar(), kDefaultTruncation);
    }
    comps.push_back(std::move(p));
  }
  return make_holo_map(source_dim, target_dim, std::move(comps));
}

Point Rng::point(int n, int max_num, int max_den) {
  Point p;
  p.coords.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.coords.push_back(scalar(max_num, max_den));
  return p;
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

namespace {

const char* const kMutations[] = {"dolbeault", "exp_multiplicative", "extension_substitution",  "endo",
                                  "conjugation", "oracle",    "binomial"};

void validate_mutation(const std::string& m) {
  if (m.empty()) return;
  for (const char* name : kMutations)
    if (m == name) return;
  throw std::invalid_argument("unknown mutation '" + m + "'");
}

template <class Body>
IdentityResult run_cases(std::string name, const SuiteOptions& o, Body&& body) {
  validate_mutation(o.mutate);
  IdentityResult res{std::move(name), o.cases, 0, ""};
  for (int c = 0; c < o.cases; ++c) {
    std::uint64_t s = case_seed(o.seed, static_cast<std::uint64_t>(c));
    Rng rng(s);
    bool ok;
    try {
      ok = body(rng);
    } catch (const std::exception& e) {
      ok = false;
      if (res.note.empty()) res.note = std::string("exception: ") + e.what();
    }
    if (!ok) {
      ++res.failures;
      if (res.note.empty())
        res.note = "case " + std::to_string(c) + " (seed " + std::to_string(s) + ")";
    }
  }
  return res;
}

BiForm dz_basis(int n, std::uint32_t holo, std::uint32_t anti, int trunc) {
  return BiForm::monomial(n, FormMonomial{holo, anti}, Poly::constant(Scalar(1), trunc));
}

}  // namespace

IdentityResult check_dolbeault_algebra(const SuiteOptions& o) {
  return run_cases("dolbeault_algebra", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    BiForm a = rng.mixed_form(n, 3, 2);
    if (o.mutate == "dolbeault")
      return del(delbar(a)) == delbar(del(a));  // wrong sign on purpose
    return exterior_d(exterior_d(a)).is_zero() && del(del(a)).is_zero() &&
           delbar(delbar(a)).is_zero() && (del(delbar(a)) + delbar(del(a))).is_zero();
  });
}

IdentityResult check_leibniz(const SuiteOptions& o) {
  return run_cases("leibniz", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    int pa = rng.uniform(0, std::min(n, 2));
    int qa = rng.uniform(0, std::min(n, 2));
    BiForm a = rng.form(n, pa, qa, 2, 2);
    BiForm b = rng.mixed_form(n, 2, 2);
    BiForm lhs = exterior_d(wedge(a, b));
    BiForm rhs = wedge(exterior_d(a), b);
    BiForm second = wedge(a, exterior_d(b));
    rhs += ((pa + qa) & 1) ? -second : second;
    return lhs == rhs;
  });
}

IdentityResult check_conj_del(const SuiteOptions& o) {
  return run_cases("conj_del", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    BiForm a = rng.mixed_form(n, 2, 2);
    return conj(del(a)) == delbar(conj(a));
  });
}

IdentityResult check_pullback_morphism(const SuiteOptions& o) {
  return run_cases("pullback_morphism", o, [&](Rng& rng) {
    int m = rng.uniform(1, std::max(1, std::min(o.max_dim, 3)));
    int n = rng.uniform(1, std::max(1, std::min(o.max_dim, 3)));
    HoloMap f = rng.holo_map(m, n, 2);
    BiForm a = rng.mixed_form(n, 2, 2);
    BiForm b = rng.mixed_form(n, 2, 2);
    if (pullback(f, wedge(a, b)) != wedge(pullback(f, a), pullback(f, b))) return false;
    if (pullback(f, exterior_d(a)) != exterior_d(pullback(f, a))) return false;
    if (pullback(f, del(a)) != del(pullback(f, a))) return false;
    return pullback(f, delbar(a)) == delbar(pullback(f, a));
  });
}

IdentityResult check_j_action(const SuiteOptions& o) {
  return run_cases("j_action", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    int pa = rng.uniform(0, std::min(n, 2));
    int qa = rng.uniform(0, std::min(n, 2));
    BiForm a = rng.form(n, pa, qa, 2, 2);
    BiForm b = rng.mixed_form(n, 2, 2);
    if (j_action(wedge(a, b)) != wedge(j_action(a), j_action(b))) return false;
    BiForm twice = j_action(j_action(a));
    return twice == (((pa + qa) & 1) ? -a : a);
  });
}

IdentityResult check_eval_multiplicative(const SuiteOptions& o) {
  return run_cases("eval_multiplicative", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    FormMonomial ma{rng.chance(50) ? random_subset(rng, n, rng.uniform(0, n)) : 0u,
                    rng.chance(50) ? random_subset(rng, n, rng.uniform(0, n)) : 0u};
    FormMonomial mb{rng.chance(50) ? random_subset(rng, n, rng.uniform(0, n)) : 0u,
                    rng.chance(50) ? random_subset(rng, n, rng.uniform(0, n)) : 0u};
    Poly ca = Poly::term(rng.monomial(n, 2), rng.scalar(), 2);
    Poly cb = Poly::term(rng.monomial(n, 2), rng.scalar(), 2);
    BiForm u = BiForm::monomial(n, ma, ca);
    BiForm v = BiForm::monomial(n, mb, cb);
    BiForm w = wedge(u, v);
    BiForm unit = wedge(dz_basis(n, ma.holo, ma.anti, 2), dz_basis(n, mb.holo, mb.anti, 2));
    if (w.is_zero()) return unit.is_zero() || ca.is_zero() || cb.is_zero();
    Scalar sign = unit.terms().begin()->second.terms().begin()->second;
    const Poly& cw = w.terms().begin()->second;
    if (cw != (ca * cb) * sign) return false;
    Point pt = rng.point(n);
    return cw.eval(pt.coords) == ca.eval(pt.coords) * cb.eval(pt.coords) * sign;
  });
}

IdentityResult check_contract_bidegree(const SuiteOptions& o) {
  return run_cases("contract_bidegree", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    int qphi = rng.uniform(1, 2);
    VecForm phi = rng.vec_form(n, qphi, 2, 2);
    int p = rng.uniform(0, std::min(n, 2));
    int q = rng.uniform(0, std::min(n, 2));
    BiForm a = rng.form(n, p, q, 2, 2);
    BiForm r = contract(phi, a);
    if (p == 0) return r.is_zero();
    return r.is_pure_bidegree(p - 1, q + qphi);
  });
}

IdentityResult check_contract_recursion(const SuiteOptions& o) {
  return run_cases("contract_recursion", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, 1, 2, 2);
    int p = rng.uniform(1, n);
    std::uint32_t mask = random_subset(rng, n, p);
    int i1 = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1u);
    BiForm whole = dz_basis(n, mask, 0, 2);
    BiForm head = dz_basis(n, 1u << i1, 0, 2);
    BiForm tail = dz_basis(n, rest, 0, 2);
    // iota^k(dz^{i1} ∧ dz^{I'}) = k iota dz^{i1} ∧ iota^{k-1} dz^{I'}
    //                               + dz^{i1} ∧ iota^k dz^{I'}
    BiForm it_whole = whole;
    BiForm it_tail_prev = tail;                 // iota^{k-1}(tail)
    BiForm it_tail = contract(phi, tail);       // iota^k(tail)
    for (int k = 1; k <= p + 1; ++k) {
      it_whole = contract(phi, it_whole);
      BiForm rhs = wedge(contract(phi, head), it_tail_prev) * Scalar(k);
      rhs += wedge(head, it_tail);
      if (it_whole != rhs) return false;
      it_tail_prev = it_tail;
      it_tail = contract(phi, it_tail);
    }
    return true;
  });
}

IdentityResult check_exp_multiplicative(const SuiteOptions& o) {
  return run_cases("exp_multiplicative", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, 1, 2, 2);
    int p = rng.uniform(1, std::min(n, 4));
    std::uint32_t mask = random_subset(rng, n, p);
    BiForm lhs = BiForm::scalar(n, Poly::constant(Scalar(1), 2));
    for (std::uint32_t b = mask; b != 0; b &= b - 1) {
      BiForm dzi = dz_basis(n, 1u << std::countr_zero(b), 0, 2);
      BiForm factor = exp_contract(phi, dzi);
      if (o.mutate == "exp_multiplicative") factor = dzi * Scalar(2) - factor;  // dz - iota dz
      lhs = wedge(lhs, factor);
    }
    return lhs == exp_contract(phi, dz_basis(n, mask, 0, 2));
  });
}

IdentityResult check_extension_lemma(const SuiteOptions& o) {
  return run_cases("extension_substitution", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, 1, 2, 2, true);
    BiForm a = rng.mixed_form(n, 2, 2, true);
    CoframeSubstitution s = extension_substitution(phi);
    if (o.mutate == "extension_substitution") {
      ConjVecForm pb = conj(phi);
      for (int i = 0; i < n; ++i)
        s.anti_images[static_cast<std::size_t>(i)] -=
            pb.comps[static_cast<std::size_t>(i)] * Scalar(2);  // (I + phi - phibar)
    }
    return simultaneous_contract(s, a) == extension_map(phi, a);
  });
}

IdentityResult check_endo_product(const SuiteOptions& o) {
  return run_cases("endo_product", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, 1, 2, 2);
    ConjVecForm pb = conj(phi);
    EndoField e = endo_compose(phi, pb);
    for (int i = 0; i < n; ++i) {
      // direct interior product iota_phibar(phi^i)
      BiForm direct = contract(pb, phi.comps[static_cast<std::size_t>(i)]);
      BiForm viaMatrix(n, e.trunc);
      for (int j = 0; j < n; ++j) {
        const Poly& entry =
            o.mutate == "endo"
                ? e.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                : e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        viaMatrix.add_term(FormMonomial{1u << j, 0}, entry);
      }
      if (direct != viaMatrix) return false;
    }
    return true;
  });
}

IdentityResult check_bracket_symmetry(const SuiteOptions& o) {
  return run_cases("bracket_symmetry", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    int p = rng.uniform(1, 2);
    int q = rng.uniform(1, 2);
    VecForm phi = rng.vec_form(n, p, 2, 2);
    VecForm psi = rng.vec_form(n, q, 2, 2);
    VecForm lhs = bracket(phi, psi);
    VecForm rhs = bracket(psi, phi);
    Scalar s = ((p * q) & 1) ? Scalar(1) : Scalar(-1);  // -(-1)^{pq}
    return (lhs - scale(rhs, s)).is_zero();
  });
}

IdentityResult check_lie_decomposition(const SuiteOptions& o) {
  return run_cases("lie_decomposition", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, rng.uniform(1, 2), 2, 2);
    BiForm a = rng.mixed_form(n, 2, 2);
    return lie_derivative(phi, a) == lie_derivative_10(phi, a) + lie_derivative_01(phi, a);
  });
}

IdentityResult check_conjugation_identity(const SuiteOptions& o) {
  return run_cases("conjugation_identity", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.vec_form(n, 1, 2, 2);
    BiForm a = rng.mixed_form(n, 2, 2);
    if (o.mutate == "conjugation") {
      BiForm lhs = exp_contract(-phi, exterior_d(exp_contract(phi, a)));
      VecForm half_bracket = scale(bracket(phi, phi), Scalar::of(1, 2));
      BiForm rhs = exterior_d(a) + lie_derivative(phi, a) - contract(half_bracket, a);
      return (lhs - rhs).is_zero();
    }
    return conjugation_residual(phi, a).is_zero();
  });
}

IdentityResult check_extension_invertible(const SuiteOptions& o) {
  return run_cases("extension_invertible", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm phi = rng.family(n, 2, 2);
    BiForm a = rng.mixed_form(n, 2, 2, true);
    ConjVecForm pb = conj(phi);
    CoframeSubstitution off{n, phi.comps, pb.comps};
    CoframeSubstitution inv = identity_substitution(n, 2);
    auto invert = [&](const BiForm& start) {
      BiForm acc = start;
      BiForm x = start;
      int sign = -1;
      for (int k = 1; k <= a.truncation() + 1; ++k) {
        x = simultaneous_contract(off, x);
        if (x.is_zero()) break;
        acc += sign < 0 ? -x : x;
        sign = -sign;
      }
      return acc;
    };
    for (int i = 0; i < n; ++i) {
      inv.holo_images[static_cast<std::size_t>(i)] = invert(dz_basis(n, 1u << i, 0, 2));
      inv.anti_images[static_cast<std::size_t>(i)] = invert(dz_basis(n, 0, 1u << i, 2));
    }
    return simultaneous_contract(inv, extension_map(phi, a)) == a;
  });
}

namespace {

struct OracleInstance {
  MetricFamily mf;
  DeformationFamily fam;
  int k = 1;
};

OracleInstance random_oracle_instance(Rng& rng, int max_dim) {
  int n = rng.uniform(2, std::clamp(max_dim, 2, 3));
  int k = rng.uniform(1, std::min(2, n - 1));
  BiForm base = rng.real_11(n, 2, 2);
  BiForm omega_t = base + times_t(rng.real_11(n, 2, 2), 1);
  if (rng.chance(40)) omega_t += times_t(rng.real_11(n, 1, 2), 2);
  MetricFamily mf = make_metric_family(std::move(omega_t));
  DeformationFamily fam = make_deformation_family(rng.family(n, 2, 2));
  return OracleInstance{std::move(mf), std::move(fam), k};
}

}  // namespace

IdentityResult check_oracle_equivalence(const SuiteOptions& o) {
  return run_cases("oracle_equivalence", o, [&](Rng& rng) {
    if (o.max_dim < 2) return true;  // no admissible k on a 1-dimensional patch
    OracleInstance inst = random_oracle_instance(rng, o.max_dim);
    BiForm oracle = order1_jet_oracle(inst.mf.base, inst.fam, inst.mf, inst.k);
    if (o.mutate == "oracle") {
      VecForm phi1 = t_coefficient(inst.fam.phi, 1);
      BiForm w0 = power(inst.mf.base.omega, inst.k);
      BiForm w1 = t_derivative_at_zero(power(inst.mf.omega_t, inst.k));
      BiForm res = -del(contract(phi1, del(w0))) -
                   delbar(contract(conj(phi1), delbar(w0))) + del(delbar(w1));
      return res == oracle;
    }
    return first_order_residual(inst.mf.base, inst.fam, inst.mf, inst.k) == oracle;
  });
}

IdentityResult check_residual_reality(const SuiteOptions& o) {
  return run_cases("residual_reality", o, [&](Rng& rng) {
    if (o.max_dim < 2) return true;
    OracleInstance inst = random_oracle_instance(rng, o.max_dim);
    BiForm res = first_order_residual(inst.mf.base, inst.fam, inst.mf, inst.k);
    BiForm w1 = t_derivative_at_zero(power(inst.mf.omega_t, inst.k));
    BiForm p = del(delbar(w1));
    return res + conj(res) == p + conj(p);
  });
}

IdentityResult check_mc_constant(const SuiteOptions& o) {
  return run_cases("mc_constant_family", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    VecForm psi = rng.vec_form(n, 1, 0, 2);  // constant coefficients
    std::vector<BiForm> comps;
    for (const auto& c : psi.comps) comps.push_back(times_t(c, 1));
    DeformationFamily fam = make_deformation_family(make_vec_form(n, 1, std::move(comps)));
    return mc_residual(fam).is_zero();
  });
}

IdentityResult check_truncation_soundness(const SuiteOptions& o) {
  return run_cases("truncation_soundness", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    // same structural instance at truncation 3, then retruncated to 2
    VecForm phi3 = [&] {
      VecForm psi1 = rng.vec_form(n, 1, 2, 3);
      VecForm psi2 = rng.vec_form(n, 1, 2, 3);
      std::vector<BiForm> comps;
      for (int i = 0; i < n; ++i)
        comps.push_back(times_t(psi1.comps[static_cast<std::size_t>(i)], 1) +
                        times_t(psi2.comps[static_cast<std::size_t>(i)], 2));
      return make_vec_form(n, 1, std::move(comps));
    }();
    BiForm a3 = rng.mixed_form(n, 2, 3, true);
    DeformationFamily f3{phi3};
    BiForm full = deformed_delbar(f3, a3);
    std::vector<BiForm> comps2;
    for (const auto& c : phi3.comps) comps2.push_back(retruncate(c, 2));
    DeformationFamily f2{make_vec_form(n, 1, std::move(comps2))};
    BiForm low = deformed_delbar(f2, retruncate(a3, 2));
    return retruncate(full, 2) == low;
  });
}

IdentityResult check_blowup_binomial(const SuiteOptions& o) {
  return run_cases("blowup_binomial", o, [&](Rng& rng) {
    if (o.max_dim < 2) return true;
    int n = rng.uniform(2, std::clamp(o.max_dim, 2, 4));
    int k = rng.uniform(1, std::min(3, n - 1));
    MetricForm F = make_metric_form(rng.real_11(n, 2, 2));
    BiForm omega = rng.closed_real_11(n, 3, 2);
    BlowupInstance b = make_blowup_instance(std::move(F), std::move(omega), k);
    if (!binomial_expansion_residual(b).is_zero()) return false;
    // coefficient of N^{k-l} in del delbar (F+N omega)^k is C(k,l) ddbar(F^l) ∧ omega^{k-l}
    BiForm f_tilde = b.F.omega;
    for (const auto& [m, c] : b.omega.terms())
      f_tilde.add_term(m, c.times_var(kSlotN));
    BiForm lhs = del(delbar(power(f_tilde, b.k)));
    for (int l = 0; l <= b.k; ++l) {
      long coeff = binomial(b.k, l);
      if (o.mutate == "binomial") coeff += (l == 1 ? 1 : 0);
      BiForm expected =
          wedge(del(delbar(power(b.F.omega, l))), power(b.omega, b.k - l)) * Scalar(coeff);
      if (n_coefficient(lhs, b.k - l) != expected) return false;
    }
    return true;
  });
}

IdentityResult check_blowup_preserved(const SuiteOptions& o) {
  return run_cases("blowup_preserved", o, [&](Rng& rng) {
    if (o.max_dim < 2) return true;
    int n = rng.uniform(2, std::clamp(o.max_dim, 2, 4));
    int k = rng.uniform(1, n - 1);
    BiForm f = rng.chance(50) ? rng.closed_real_11(n, 2, 2) : rng.special_instance(n, 2);
    MetricForm F = make_metric_form(std::move(f));
    if (!check_k_special(F, k).holds) return true;  // hypothesis must pass first
    BlowupInstance b = make_blowup_instance(std::move(F), rng.closed_real_11(n, 2, 2), k);
    return k_special_preserved(b).holds;
  });
}

IdentityResult check_relabel_invariance(const SuiteOptions& o) {
  return run_cases("relabel_invariance", o, [&](Rng& rng) {
    int n = rng.uniform(1, std::max(1, o.max_dim));
    BiForm f = rng.chance(50) ? rng.special_instance(n, 2) : rng.real_11(n, 2, 2);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform(0, i))]);
    ConditionReport before = classify(make_metric_form(f));
    ConditionReport after = classify(make_metric_form(relabel(f, perm)));
    if (before.verdicts.size() != after.verdicts.size()) return false;
    for (std::size_t i = 0; i < before.verdicts.size(); ++i) {
      if (before.verdicts[i].name != after.verdicts[i].name) return false;
      if (before.verdicts[i].holds != after.verdicts[i].holds) return false;
      // a fails-witness, re-checked, is nonzero in canonical form
      if (!before.verdicts[i].holds && before.verdicts[i].witness.is_zero()) return false;
    }
    return true;
  });
}

std::vector<IdentityResult> run_identity_suite(const SuiteOptions& o) {
  std::vector<IdentityResult> out;
  out.push_back(check_dolbeault_algebra(o));
  out.push_back(check_leibniz(o));
  out.push_back(check_conj_del(o));
  out.push_back(check_pullback_morphism(o));
  out.push_back(check_j_action(o));
  out.push_back(check_eval_multiplicative(o));
  out.push_back(check_contract_bidegree(o));
  out.push_back(check_contract_recursion(o));
  out.push_back(check_exp_multiplicative(o));
  out.push_back(check_extension_lemma(o));
  out.push_back(check_endo_product(o));
  out.push_back(check_bracket_symmetry(o));
  out.push_back(check_lie_decomposition(o));
  out.push_back(check_conjugation_identity(o));
  out.push_back(check_extension_invertible(o));
  out.push_back(check_oracle_equivalence(o));
  out.push_back(check_residual_reality(o));
  out.push_back(check_mc_constant(o));
  out.push_back(check_truncation_soundness(o));
  out.push_back(check_blowup_binomial(o));
  out.push_back(check_blowup_preserved(o));
  out.push_back(check_relabel_invariance(o));
  return out;
}

}  // namespace shm
