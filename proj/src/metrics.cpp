#include "shm/metrics.hpp"

#include <stdexcept>

namespace shm {

MetricForm make_metric_form(BiForm omega, std::vector<Point> sample_points) {
  const int n = omega.dim();
  if (!omega.is_pure_bidegree(1, 1))
    throw std::invalid_argument("metric form must be pure (1,1)");
  if (conj(omega) != omega) throw std::invalid_argument("metric form must be conj-real");
  if (omega.uses_t() || omega.uses_n())
    throw std::invalid_argument("metric form cannot involve t or N");
  for (const Point& p : sample_points) {
    if (p.dim() < n) throw std::invalid_argument("sample point has too few coordinates");
    if (!is_positive_definite_at(omega, p))
      throw std::invalid_argument("metric form is not positive definite at a sample point");
  }
  return MetricForm{std::move(omega), n, std::move(sample_points)};
}

namespace {

Verdict zero_or_witness(std::string name, BiForm candidate, int dim, int trunc) {
  if (candidate.is_zero()) return Verdict::pass(std::move(name), dim, trunc);
  return Verdict::fail(std::move(name), std::move(candidate));
}

}  // namespace

Verdict check_kahler(const MetricForm& m) {
  return zero_or_witness("kahler", exterior_d(m.omega), m.dim, m.omega.truncation());
}

Verdict check_k_special(const MetricForm& m, int k) {
  if (k < 1 || k > m.dim - 1) throw std::invalid_argument("k out of range 1..n-1");
  for (int i = 1; i <= k; ++i) {
    BiForm r = del(delbar(power(m.omega, i)));
    if (!r.is_zero()) return Verdict::fail("k_special[" + std::to_string(i) + "]", std::move(r));
  }
  return Verdict::pass("k_special[" + std::to_string(k) + "]", m.dim, m.omega.truncation());
}

Verdict check_special(const MetricForm& m) {
  if (m.dim == 1) return Verdict::pass("special", m.dim, m.omega.truncation());
  Verdict v = check_k_special(m, m.dim - 1);
  v.name = "special";
  return v;
}

Verdict check_skt(const MetricForm& m) {
  if (m.dim < 2) throw std::invalid_argument("skt needs n >= 2");
  return zero_or_witness("skt", del(delbar(m.omega)), m.dim, m.omega.truncation());
}

Verdict check_astheno(const MetricForm& m) {
  if (m.dim < 3) throw std::invalid_argument("astheno-kahler needs n >= 3");
  return zero_or_witness("astheno_kahler", del(delbar(power(m.omega, m.dim - 2))), m.dim,
                         m.omega.truncation());
}

Verdict check_balanced(const MetricForm& m) {
  if (m.dim < 2) throw std::invalid_argument("balanced needs n >= 2");
  return zero_or_witness("balanced", exterior_d(power(m.omega, m.dim - 1)), m.dim,
                         m.omega.truncation());
}

Verdict check_gauduchon(const MetricForm& m) {
  if (m.dim < 2) throw std::invalid_argument("gauduchon needs n >= 2");
  return zero_or_witness("gauduchon", del(delbar(power(m.omega, m.dim - 1))), m.dim,
                         m.omega.truncation());
}

bool ConditionReport::all_hold() const {
  for (const auto& v : verdicts)
    if (!v.holds) return false;
  return true;
}

const Verdict* ConditionReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

ConditionReport classify(const MetricForm& m) {
  ConditionReport rep;
  rep.verdicts.push_back(check_kahler(m));
  if (m.dim >= 2) {
    rep.verdicts.push_back(check_skt(m));
    if (m.dim >= 3) rep.verdicts.push_back(check_astheno(m));
    rep.verdicts.push_back(check_balanced(m));
    rep.verdicts.push_back(check_gauduchon(m));
  }
  rep.verdicts.push_back(check_special(m));
  for (int k = 1; k <= m.dim - 1; ++k) rep.verdicts.push_back(check_k_special(m, k));
  return rep;
}

}  // namespace shm
