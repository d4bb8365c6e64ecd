#ifndef SHM_DEFORMATION_HPP
#define SHM_DEFORMATION_HPP

#include "shm/metrics.hpp"
#include "shm/vecform.hpp"

namespace shm {

// One-parameter family of complex structures as a t-jet: phi(t) is a (0,1)
// vector form with t-dependent coefficients and phi(0) = 0.
struct DeformationFamily {
  VecForm phi;
};

DeformationFamily make_deformation_family(VecForm phi);

// Family of (1,1) forms omega(t) on the central fiber, with its t = 0 slice
// validated as a metric form.
struct MetricFamily {
  BiForm omega_t;
  MetricForm base;
};

MetricFamily make_metric_family(BiForm omega_t, std::vector<Point> sample_points = {});

// delbar(phi) - [phi,phi]/2, the Maurer-Cartan defect of the family.
VecForm mc_residual(const DeformationFamily& f);

// (delbar - iota_phi ∘ del) fn: zero iff fn stays holomorphic on the deformed
// structure.
BiForm holomorphy_residual(const DeformationFamily& f, const Poly& fn);

// dbar_t f = e^{iota_phibar}( (I - phibar phi)^{-1} ⌟ (delbar - phi ⌟ del) f ).
BiForm deformed_delbar_function(const DeformationFamily& f, const Poly& fn);

// Inner operands beta of del_t(e(alpha)) = e(beta) resp. dbar_t(e(alpha)) = e(beta):
//   del_t:  (I-phi phibar)^{-1} ⨝ ([delbar, iota_phibar] + del) (I-phi phibar) ⨝ alpha
//   dbar_t: (I-phibar phi)^{-1} ⨝ ([del, iota_phi] + delbar) (I-phibar phi) ⨝ alpha
BiForm deformed_del(const DeformationFamily& f, const BiForm& alpha);
BiForm deformed_delbar(const DeformationFamily& f, const BiForm& alpha);

// First-order stability obstruction for del_t dbar_t omega_t^k = 0:
//   -del(iota_{phi1} del W) + delbar(iota_{conj phi1} delbar W) + del delbar W',
// with phi1 the t-linear part of phi, W = omega^k at t = 0 and W' its first
// t-jet coefficient.
BiForm first_order_residual(const MetricForm& base, const DeformationFamily& f,
                            const MetricFamily& mf, int k);

// Independent oracle: t-coefficient of the full deformed del∘dbar pipeline
// applied to omega(t)^k. Must agree with first_order_residual exactly.
BiForm order1_jet_oracle(const MetricForm& base, const DeformationFamily& f,
                         const MetricFamily& mf, int k);

}  // namespace shm

#endif
