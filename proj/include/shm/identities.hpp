#ifndef SHM_IDENTITIES_HPP
#define SHM_IDENTITIES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shm/blowup.hpp"
#include "shm/deformation.hpp"

namespace shm {

// Deterministic instance generator. mt19937_64 with modulo reduction is fully
// specified, so identical seeds produce identical instances everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }
  // Inclusive bounds.
  int uniform(int lo, int hi);
  bool chance(int percent);
  Rational rational(int max_num = 3, int max_den = 2);
  Scalar scalar(int max_num = 3, int max_den = 2);
  Monomial monomial(int n, int max_deg, bool allow_t = false);
  Poly poly(int n, int max_deg, int trunc, bool allow_t = false, int max_terms = 3);
  // Pure (p,q) form with random sparse coefficients.
  BiForm form(int n, int p, int q, int max_deg, int trunc, bool allow_t = false);
  BiForm mixed_form(int n, int max_deg, int trunc, bool allow_t = false);
  // conj-real (1,1) form: r + conj(r) with an identity part.
  BiForm real_11(int n, int max_deg, int trunc, bool allow_t = false);
  // d-closed conj-real (1,1): i*del(delbar(rho + conj(rho))) + constant part.
  BiForm closed_real_11(int n, int max_deg, int trunc);
  // Fundamental form that is k-special for every k: constant positive part
  // plus one real-linear perturbation i*c*(z^a + zb^a) dz^b ∧ dzb^b, a != b.
  BiForm special_instance(int n, int trunc);
  VecForm vec_form(int n, int q, int max_deg, int trunc, bool allow_t = false);
  // (0,1) family with phi(0) = 0: t * psi1 + t^2 * psi2.
  VecForm family(int n, int max_deg, int trunc);
  HoloMap holo_map(int source_dim, int target_dim, int max_deg);
  Point point(int n, int max_num = 2, int max_den = 2);

 private:
  std::mt19937_64 gen_;
};

// Stable per-case seed derivation (splitmix64 of seed and index).
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

struct IdentityResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string note;  // first failing case echo, or narrowing info

  bool pass() const { return failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int max_dim = 3;   // patch dimension drawn from 1..max_dim per case
  int cases = 50;    // cases per identity
  // Deliberately broken variant evaluated instead of the real identity, to
  // demonstrate suite sensitivity. Empty = off. Names:
  //   dolbeault, exp_multiplicative, extension_substitution, endo, conjugation, oracle, binomial
  std::string mutate;
};

IdentityResult check_dolbeault_algebra(const SuiteOptions& o);      // d^2 family
IdentityResult check_leibniz(const SuiteOptions& o);                // graded product rule
IdentityResult check_conj_del(const SuiteOptions& o);               // conj∘del = delbar∘conj
IdentityResult check_pullback_morphism(const SuiteOptions& o);      // commutes with d, del, delbar, wedge
IdentityResult check_j_action(const SuiteOptions& o);               // automorphism, J^2 = (-1)^{p+q}
IdentityResult check_eval_multiplicative(const SuiteOptions& o);    // evaluation as ring morphism
IdentityResult check_contract_bidegree(const SuiteOptions& o);      // (p,q) -> (p-1, q+q'), 0 on p=0
IdentityResult check_contract_recursion(const SuiteOptions& o);     // iota^k product recursion
IdentityResult check_exp_multiplicative(const SuiteOptions& o);     // e^iota on wedge monomials
IdentityResult check_extension_lemma(const SuiteOptions& o);        // (I+phi+phibar) ⨝ = extension map
IdentityResult check_endo_product(const SuiteOptions& o);             // phibar ⌟ phi = phi phibar
IdentityResult check_bracket_symmetry(const SuiteOptions& o);       // graded symmetry
IdentityResult check_lie_decomposition(const SuiteOptions& o);      // L = L^{1,0} + L^{0,1}
IdentityResult check_conjugation_identity(const SuiteOptions& o);   // e^{-iota} d e^{iota}
IdentityResult check_extension_invertible(const SuiteOptions& o);   // Neumann-inverse substitution
IdentityResult check_oracle_equivalence(const SuiteOptions& o);     // residual = jet oracle
IdentityResult check_residual_reality(const SuiteOptions& o);       // res + conj(res) identity
IdentityResult check_mc_constant(const SuiteOptions& o);            // t-linear constant families
IdentityResult check_truncation_soundness(const SuiteOptions& o);   // order k+1 -> k reproduces
IdentityResult check_blowup_binomial(const SuiteOptions& o);        // expansion residual + N-coefficients
IdentityResult check_blowup_preserved(const SuiteOptions& o);       // preservation under hypothesis
IdentityResult check_relabel_invariance(const SuiteOptions& o);     // verdicts under permutation

std::vector<IdentityResult> run_identity_suite(const SuiteOptions& o);

}  // namespace shm

#endif
