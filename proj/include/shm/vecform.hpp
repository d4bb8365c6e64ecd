#ifndef SHM_VECFORM_HPP
#define SHM_VECFORM_HPP

#include <vector>

#include "shm/biform.hpp"

namespace shm {

// T^{1,0}-valued (0,q)-form: phi = sum_i phi^i ⊗ d/dz^i with each component
// a pure (0,q) form.
struct VecForm {
  int dim = 0;
  int q = 0;
  std::vector<BiForm> comps;  // comps[i] = phi^{i+1}

  bool is_zero() const;
  int truncation() const;
};

VecForm make_vec_form(int dim, int q, std::vector<BiForm> comps);
VecForm zero_vec_form(int dim, int q, int truncation = kDefaultTruncation);

// Conjugate object: phibar = sum_k conj(phi^k) ⊗ d/dzbar^k, components pure (q,0).
struct ConjVecForm {
  int dim = 0;
  int q = 0;
  std::vector<BiForm> comps;  // comps[k] = conj(phi^{k+1})
};

ConjVecForm conj(const VecForm& phi);

VecForm operator-(const VecForm& phi);
VecForm operator+(const VecForm& a, const VecForm& b);
VecForm operator-(const VecForm& a, const VecForm& b);
VecForm scale(const VecForm& phi, const Scalar& c);
VecForm delbar(const VecForm& phi);            // component-wise, q -> q+1
VecForm t_coefficient(const VecForm& phi, int k);

// Contraction: iota_phi(a) = sum_i phi^i ∧ (d/dz^i ⌟ a); maps (p,q) to
// (p-1, q + q_phi), zero when p = 0.
BiForm contract(const VecForm& phi, const BiForm& a);
// Conjugate contraction replacing dzbar factors; the interior sign crosses
// the holomorphic block first.
BiForm contract(const ConjVecForm& phibar, const BiForm& a);

// e^{iota_phi} = sum_k iota_phi^k / k!, finite because the holomorphic degree
// drops at each step. Defined for q = 1.
BiForm exp_contract(const VecForm& phi, const BiForm& a);
BiForm exp_contract(const ConjVecForm& phibar, const BiForm& a);

// Rule assigning a 1-form image to each dz^i and dzbar^j, extended
// multiplicatively over coframe monomials with coefficients untouched.
struct CoframeSubstitution {
  int dim = 0;
  std::vector<BiForm> holo_images;
  std::vector<BiForm> anti_images;
};

CoframeSubstitution identity_substitution(int dim, int truncation = kDefaultTruncation);
// (I + phi + phibar): dz^i -> dz^i + phi^i, dzbar^j -> dzbar^j + conj(phi^j).
CoframeSubstitution extension_substitution(const VecForm& phi);
BiForm simultaneous_contract(const CoframeSubstitution& s, const BiForm& a);

// Extension map e^{iota_phi | iota_phibar}: exp-contracts the holomorphic part
// of each monomial with phi and the antiholomorphic part with conj(phi).
BiForm extension_map(const VecForm& phi, const BiForm& a);

// [phi,psi]^j = sum_i (phi^i ∧ d_i psi^j - (-1)^{pq} psi^i ∧ d_i phi^j),
// d_i acting on coefficients only.
VecForm bracket(const VecForm& phi, const VecForm& psi);

// Twisted Lie derivatives: L^{1,0} = (-1)^q del∘iota + iota∘del, and the
// (0,1) / full-d versions.
BiForm lie_derivative_10(const VecForm& phi, const BiForm& a);
BiForm lie_derivative_01(const VecForm& phi, const BiForm& a);
BiForm lie_derivative(const VecForm& phi, const BiForm& a);

// Function-valued n x n endomorphism acting on one side of the coframe.
enum class EndoSide { Holo, Anti };

struct EndoField {
  int dim = 0;
  EndoSide side = EndoSide::Holo;
  int trunc = kDefaultTruncation;
  std::vector<std::vector<Poly>> entries;

  bool is_zero() const;
};

EndoField endo_identity(int dim, EndoSide side, int truncation = kDefaultTruncation);
EndoField endo_sub(const EndoField& a, const EndoField& b);
EndoField endo_mul(const EndoField& a, const EndoField& b);

// phi phibar: entries[i][j] = sum_k phi^i_{kbar} * phibar^{kbar}_j (holo side);
// equals the interior-product computation iota_phibar(phi).
EndoField endo_compose(const VecForm& phi, const ConjVecForm& phibar);
// phibar phi: entries[k][j] = sum_i phibar^{kbar}_i * phi^i_{jbar} (anti side).
EndoField endo_compose(const ConjVecForm& phibar, const VecForm& phi);

// (I - M)^{-1} = sum M^k for M of t-order >= 1; exact under truncation.
EndoField neumann_inverse(const EndoField& i_minus_m);

// Substitution acting as the endomorphism on its side, identity on the other.
CoframeSubstitution endo_substitution(const EndoField& e);

// e^{-iota_phi}∘d∘e^{iota_phi}(a) - (d - L_phi - iota_{[phi,phi]/2})(a);
// identically zero for the implemented calculus.
BiForm conjugation_residual(const VecForm& phi, const BiForm& a);

}  // namespace shm

#endif
