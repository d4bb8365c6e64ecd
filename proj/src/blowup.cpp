#include "shm/blowup.hpp"

#include <stdexcept>

namespace shm {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
  return r;
}

BlowupInstance make_blowup_instance(MetricForm F, BiForm omega, int k) {
  if (omega.dim() != F.dim) throw std::invalid_argument("dimension mismatch");
  if (!omega.is_pure_bidegree(1, 1)) throw std::invalid_argument("omega must be pure (1,1)");
  if (conj(omega) != omega) throw std::invalid_argument("omega must be conj-real");
  if (omega.uses_t() || omega.uses_n())
    throw std::invalid_argument("omega cannot involve t or N");
  if (!exterior_d(omega).is_zero()) throw std::invalid_argument("omega must be d-closed");
  if (k < 1 || k > F.dim - 1) throw std::invalid_argument("k out of range 1..n-1");
  return BlowupInstance{std::move(F), std::move(omega), k};
}

namespace {

BiForm with_formal_n(const BiForm& omega) {
  BiForm r(omega.dim(), omega.truncation());
  for (const auto& [m, c] : omega.terms()) r.add_term(m, c.times_var(kSlotN));
  return r;
}

BiForm times_n_power(const BiForm& a, int e) {
  BiForm r(a.dim(), a.truncation());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.times_var(kSlotN, e));
  return r;
}

}  // namespace

BiForm binomial_expansion_residual(const BlowupInstance& b) {
  BiForm f_tilde = b.F.omega + with_formal_n(b.omega);
  BiForm lhs = del(delbar(power(f_tilde, b.k)));
  BiForm rhs(b.F.omega.dim(), b.F.omega.truncation());
  for (int l = 0; l <= b.k; ++l) {
    BiForm term = wedge(del(delbar(power(b.F.omega, l))), power(b.omega, b.k - l));
    rhs += times_n_power(term, b.k - l) * Scalar(binomial(b.k, l));
  }
  return lhs - rhs;
}

Verdict k_special_preserved(const BlowupInstance& b) {
  Verdict hyp = check_k_special(b.F, b.k);
  if (!hyp.holds)
    throw PreconditionError("base metric is not k-special (witness " + to_string(hyp.witness) +
                            ")");
  BiForm f_tilde = b.F.omega + with_formal_n(b.omega);
  for (int i = 1; i <= b.k; ++i) {
    BiForm r = del(delbar(power(f_tilde, i)));
    if (!r.is_zero())
      return Verdict::fail("preserved[" + std::to_string(i) + "]", std::move(r));
  }
  return Verdict::pass("preserved[" + std::to_string(b.k) + "]", b.F.dim,
                       b.F.omega.truncation());
}

HoloMap blowup_chart(int n, int m, int chart_index) {
  if (m < 0 || m >= n) throw std::invalid_argument("center dimension must satisfy 0 <= m < n");
  if (chart_index < m || chart_index >= n)
    throw std::invalid_argument("chart index must lie in m..n-1");
  std::vector<Poly> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i < m || i == chart_index) {
      comps.push_back(Poly::variable(slot_z(i)));
    } else {
      comps.push_back(Poly::variable(slot_z(chart_index)) * Poly::variable(slot_z(i)));
    }
  }
  return make_holo_map(n, n, std::move(comps));
}

BiForm blowup_chart_pullback(const BiForm& f, const HoloMap& chart) {
  return pullback(chart, f);
}

std::optional<int> positivity_threshold(const BiForm& f_pulled, const BiForm& omega,
                                        const std::vector<Point>& points, int cap) {
  if (points.empty()) throw std::invalid_argument("positivity threshold needs sample points");
  if (f_pulled.dim() != omega.dim()) throw std::invalid_argument("dimension mismatch");
  if (!f_pulled.is_pure_bidegree(1, 1) || !omega.is_pure_bidegree(1, 1))
    throw std::invalid_argument("positivity threshold needs (1,1) forms");
  for (int n0 = 0; n0 <= cap; ++n0) {
    BiForm candidate = f_pulled + omega * Scalar(n0);
    bool ok = true;
    for (const Point& p : points) {
      if (!is_positive_definite_at(candidate, p)) {
        ok = false;
        break;
      }
    }
    if (ok) return n0;
  }
  return std::nullopt;
}

Verdict product_special_check(const MetricForm& f_a, const MetricForm& omega_b) {
  const int a = f_a.dim;
  const int b = omega_b.dim;
  if (a + b > kMaxDim)
    throw std::invalid_argument("combined dimension exceeds the supported cap");
  Verdict special_a = check_special(f_a);
  if (!special_a.holds)
    throw PreconditionError("first factor is not special (witness " +
                            to_string(special_a.witness) + ")");
  Verdict kahler_b = check_kahler(omega_b);
  if (!kahler_b.holds)
    throw PreconditionError("second factor is not Kahler (witness " +
                            to_string(kahler_b.witness) + ")");
  const int n = a + b;
  BiForm combined = shift_embed(f_a.omega, n, 0) + shift_embed(omega_b.omega, n, a);
  for (int i = 1; i <= n - 1; ++i) {
    BiForm r = del(delbar(power(combined, i)));
    if (!r.is_zero())
      return Verdict::fail("product_special[" + std::to_string(i) + "]", std::move(r));
  }
  return Verdict::pass("product_special", n, combined.truncation());
}

}  // namespace shm
