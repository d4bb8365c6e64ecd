#include "shm/deformation.hpp"

#include <stdexcept>

namespace shm {

DeformationFamily make_deformation_family(VecForm phi) {
  if (phi.q != 1) throw std::invalid_argument("deformation family needs a (0,1) vector form");
  for (const BiForm& comp : phi.comps)
    for (const auto& [m, c] : comp.terms())
      if (!c.t_coefficient(0).is_zero())
        throw std::invalid_argument("deformation family must vanish at t = 0");
  return DeformationFamily{std::move(phi)};
}

MetricFamily make_metric_family(BiForm omega_t, std::vector<Point> sample_points) {
  BiForm slice(omega_t.dim(), omega_t.truncation());
  for (const auto& [m, c] : omega_t.terms()) slice.add_term(m, c.t_coefficient(0));
  if (omega_t.uses_n()) throw std::invalid_argument("metric family cannot involve N");
  MetricForm base = make_metric_form(std::move(slice), std::move(sample_points));
  return MetricFamily{std::move(omega_t), std::move(base)};
}

VecForm mc_residual(const DeformationFamily& f) {
  VecForm half_bracket = scale(bracket(f.phi, f.phi), Scalar::of(1, 2));
  return delbar(f.phi) - half_bracket;
}

BiForm holomorphy_residual(const DeformationFamily& f, const Poly& fn) {
  BiForm f0 = BiForm::scalar(f.phi.dim, fn);
  return delbar(f0) - contract(f.phi, del(f0));
}

BiForm deformed_delbar_function(const DeformationFamily& f, const Poly& fn) {
  ConjVecForm pb = conj(f.phi);
  BiForm inner = holomorphy_residual(f, fn);
  EndoField correction = endo_sub(endo_identity(f.phi.dim, EndoSide::Anti, f.phi.truncation()),
                                  endo_compose(pb, f.phi));
  BiForm dressed = simultaneous_contract(endo_substitution(neumann_inverse(correction)), inner);
  return exp_contract(pb, dressed);
}

BiForm deformed_del(const DeformationFamily& f, const BiForm& alpha) {
  ConjVecForm pb = conj(f.phi);
  EndoField e = endo_sub(endo_identity(f.phi.dim, EndoSide::Holo, f.phi.truncation()),
                         endo_compose(f.phi, pb));
  BiForm step = simultaneous_contract(endo_substitution(e), alpha);
  // [delbar, iota_phibar] + del
  BiForm mid = delbar(contract(pb, step)) - contract(pb, delbar(step)) + del(step);
  return simultaneous_contract(endo_substitution(neumann_inverse(e)), mid);
}

BiForm deformed_delbar(const DeformationFamily& f, const BiForm& alpha) {
  ConjVecForm pb = conj(f.phi);
  EndoField e = endo_sub(endo_identity(f.phi.dim, EndoSide::Anti, f.phi.truncation()),
                         endo_compose(pb, f.phi));
  BiForm step = simultaneous_contract(endo_substitution(e), alpha);
  // [del, iota_phi] + delbar
  BiForm mid = del(contract(f.phi, step)) - contract(f.phi, del(step)) + delbar(step);
  return simultaneous_contract(endo_substitution(neumann_inverse(e)), mid);
}

BiForm first_order_residual(const MetricForm& base, const DeformationFamily& f,
                            const MetricFamily& mf, int k) {
  if (k < 1 || k > base.dim - 1) throw std::invalid_argument("k out of range 1..n-1");
  if (base.dim != f.phi.dim || base.dim != mf.omega_t.dim())
    throw std::invalid_argument("dimension mismatch");
  VecForm phi1 = t_coefficient(f.phi, 1);
  ConjVecForm phi1_bar = conj(phi1);
  BiForm w0 = power(base.omega, k);
  BiForm w1 = t_derivative_at_zero(power(mf.omega_t, k));
  return -del(contract(phi1, del(w0))) + delbar(contract(phi1_bar, delbar(w0))) +
         del(delbar(w1));
}

BiForm order1_jet_oracle(const MetricForm& base, const DeformationFamily& f,
                         const MetricFamily& mf, int k) {
  if (k < 1 || k > base.dim - 1) throw std::invalid_argument("k out of range 1..n-1");
  if (mf.omega_t.truncation() < 1)
    throw std::invalid_argument("jet oracle needs truncation order >= 1");
  BiForm wt = power(mf.omega_t, k);
  BiForm inner = deformed_del(f, deformed_delbar(f, wt));
  return t_derivative_at_zero(inner);
}

}  // namespace shm
