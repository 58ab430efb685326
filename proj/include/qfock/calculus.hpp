// Noncommutative polynomials in the q-Gaussians: Wick polynomials, the free
// difference quotient, cyclic derivatives, the conjugate-variable duality
// check and the free Gibbs potential.

#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "qfock/combination.hpp"
#include "qfock/fock.hpp"

namespace qfock {

struct PolyTag {};
struct TensorTag {};
/// Sum of c_w A^w with A^w = A_{w[0]} A_{w[1]} ...
using NCPoly = Combination<Word, PolyTag>;
/// Sum of c_{u,v} A^u (x) A^v.
using NCTensorPoly = Combination<std::pair<Word, Word>, TensorTag>;

NCPoly monomial(const Word& w, Scalar c = Scalar(1));
/// p * q as polynomials.
NCPoly multiply(const NCPoly& a, const NCPoly& b);
/// Degree (longest word), -1 for zero.
int degree(const NCPoly& p);
/// Homogeneous component of degree k.
NCPoly degree_part(const NCPoly& p, std::size_t k);

/// p(A) v.
FockVector apply(const FockSpace& space, const NCPoly& p, const FockVector& v);
/// p(A) e_0.
FockVector evaluate(const FockSpace& space, const NCPoly& p);
/// tau(p(A)).
Scalar trace(const FockSpace& space, const NCPoly& p);

/// Wick polynomials Q[w] with Q[w] e_0 = e_w, via
/// Q[jw] = A_j Q[w] - sum over l_j e_w of Q[.] (memoized).
class WickExpander {
 public:
  explicit WickExpander(const FockSpace& space) : space_(space) {}
  const FockSpace& space() const { return space_; }

  NCPoly recursive(const Word& w) const;
  /// Sum over D(|w|) of (-1)^{|pairs|} (crossing weight) A^{singletons}.
  NCPoly partition(const Word& w) const;

  /// Sum of v(w) Q[w].
  NCPoly vector_to_poly(const FockVector& v) const;
  /// Expands e_a (x) e_b into Q[a] (x) Q[b].
  NCTensorPoly tensor_to_poly(const NCTensorPoly& t) const;

 private:
  const FockSpace& space_;
  mutable std::mutex memo_mutex_;
  mutable std::map<Word, NCPoly> memo_;
};

/// Free difference quotient: A^w maps to the sum over positions carrying i
/// of A^{prefix} (x) A^{suffix}.
NCTensorPoly diff_quotient(int i, const NCPoly& p);

/// The partition formula over C(|w|+1) for the difference quotient of e_w,
/// in the e_a (x) e_b basis (before Wick expansion).
NCTensorPoly diff_partition_vectors(const FockSpace& space, int i, const Word& w);
/// The same expanded into A^u (x) A^v.
NCTensorPoly diff_partition(const WickExpander& wick, int i, const Word& w);

/// m_flip o diff_quotient: a (x) b maps to b a.
NCPoly cyclic_derivative(int i, const NCPoly& p);

/// <xi, A^{reverse u} e_0> minus sum over positions p with u_p = i of
/// tau(A^{u before p}) tau(A^{u after p}). Requires |u| <= L.
Scalar duality_residual(const FockSpace& space, const Word& u, int i, const FockVector& xi);
/// Convenience overload computing xi_i^{(M)}.
Scalar duality_residual(const FockSpace& space, const Word& u, int i, int M);

/// V = sum_i sum_w alpha(w,i) / (2(1+|w|)) (A^{iw} + A^{wi}), where
/// alpha(., i) are the Wick coefficients of xi_i^{(M)}. Throws
/// std::domain_error when some xi_i has a constant term.
NCPoly gibbs_potential(const WickExpander& wick, int M);

/// Same potential from precomputed conjugate polynomials (index i-1).
NCPoly gibbs_from_conjugates(const std::vector<NCPoly>& xi);

std::string to_string(const NCPoly& p);

}  // namespace qfock
