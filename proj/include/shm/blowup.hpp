#ifndef SHM_BLOWUP_HPP
#define SHM_BLOWUP_HPP

#include <optional>

#include "shm/metrics.hpp"

namespace shm {

// Mathematical hypothesis failure, reported distinctly from malformed input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Data of the blow-up stability computation: a metric form F, a d-closed
// conj-real (1,1) form omega, and the target power k. The sum F + N*omega is
// handled with N formal.
struct BlowupInstance {
  MetricForm F;
  BiForm omega;
  int k = 1;
};

BlowupInstance make_blowup_instance(MetricForm F, BiForm omega, int k);

// del delbar (F + N omega)^k  -  sum_l C(k,l) N^{k-l} del delbar(F^l) ∧ omega^{k-l};
// identically zero whenever d(omega) = 0.
BiForm binomial_expansion_residual(const BlowupInstance& b);

// Checks del delbar (F + N omega)^i = 0 identically in N for i = 1..k.
// Throws PreconditionError when F itself is not k-special.
Verdict k_special_preserved(const BlowupInstance& b);

// Standard chart c (0-based, m <= c < n) of the blow-up of C^n along the
// coordinate subspace z_{m+1} = ... = z_n = 0, from the incidence equations
// z_i l_j = z_j l_i:  z_i = w_i (i < m), z_c = w_c, z_j = w_c * w_j (else).
HoloMap blowup_chart(int n, int m, int chart_index);

BiForm blowup_chart_pullback(const BiForm& f, const HoloMap& chart);

// Smallest integer N0 >= 0 with f_pulled + N0 * omega positive definite at
// every point; nullopt if the cap is reached.
std::optional<int> positivity_threshold(const BiForm& f_pulled, const BiForm& omega,
                                        const std::vector<Point>& points, int cap = 1024);

// Verifies del delbar (F_A + omega_B)^i = 0 for i = 1..a+b-1 on the combined
// patch, F_A on coordinates 1..a and omega_B shifted to a+1..a+b. Requires
// F_A special and omega_B Kahler.
Verdict product_special_check(const MetricForm& f_a, const MetricForm& omega_b);

long binomial(int n, int k);

}  // namespace shm

#endif
