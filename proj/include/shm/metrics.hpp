#ifndef SHM_METRICS_HPP
#define SHM_METRICS_HPP

#include <string>
#include <vector>

#include "shm/biform.hpp"

namespace shm {

// Outcome of a symbolic condition check; a failing verdict always carries the
// nonzero witness form in canonical representation.
struct Verdict {
  std::string name;
  bool holds = true;
  BiForm witness;

  static Verdict pass(std::string name, int dim, int trunc) {
    return Verdict{std::move(name), true, BiForm(dim, trunc)};
  }
  static Verdict fail(std::string name, BiForm witness) {
    return Verdict{std::move(name), false, std::move(witness)};
  }
};

// Fundamental 2-form of a Hermitian metric on a coordinate patch: pure (1,1),
// conj-real, positive definite at every supplied sample point.
struct MetricForm {
  BiForm omega;
  int dim = 0;
  std::vector<Point> sample_points;
};

MetricForm make_metric_form(BiForm omega, std::vector<Point> sample_points = {});

Verdict check_kahler(const MetricForm& m);              // d(omega) = 0
Verdict check_k_special(const MetricForm& m, int k);    // del delbar omega^i = 0, i = 1..k
Verdict check_special(const MetricForm& m);             // k = n-1 (vacuous for n = 1)
Verdict check_skt(const MetricForm& m);                 // i = 1 only
Verdict check_astheno(const MetricForm& m);             // del delbar omega^{n-2}, needs n >= 3
Verdict check_balanced(const MetricForm& m);            // d(omega^{n-1}) = 0
Verdict check_gauduchon(const MetricForm& m);           // del delbar omega^{n-1} = 0

struct ConditionReport {
  std::vector<Verdict> verdicts;

  bool all_hold() const;
  const Verdict* find(const std::string& name) const;
};

ConditionReport classify(const MetricForm& m);

}  // namespace shm

#endif
