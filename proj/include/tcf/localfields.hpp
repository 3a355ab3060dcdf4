#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tcf/forms.hpp"
#include "tcf/linalg.hpp"
#include "tcf/rational.hpp"

namespace tcf {

/// A place of the rationals: the real place or a finite prime p.
class Place {
 public:
  static Place real() { return Place(Integer(0)); }
  static Place finite(const Integer& p);  // pre: p prime

  bool is_real() const { return p_ == 0; }
  const Integer& prime() const;  // pre: finite place
  std::string str() const;       // "R" or the prime

  bool operator==(const Place& o) const { return p_ == o.p_; }
  bool operator<(const Place& o) const { return p_ < o.p_; }  // real place first

 private:
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_;  // 0 encodes the real place
};

/// Hilbert symbol (a, b)_v in {+1, -1}: whether z^2 = a x^2 + b y^2 has a
/// nontrivial solution over the completion at v. Pre: a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Whether a is a square in the completion at v. Pre: a nonzero.
bool is_square_local(const Rational& a, const Place& v);

/// Congruence diagonalization of a symmetric matrix: basis^t * a * basis is
/// the diagonal matrix with entries diag. basis is invertible; zero diagonal
/// entries appear exactly when a is singular.
struct Diagonalization {
  std::vector<Rational> diag;
  QMat basis;  // columns are the new basis vectors
};
Diagonalization diagonalize_symmetric(const QMat& a);

/// Isotropy of the diagonal quadratic form sum d[i] x_i^2 over the
/// completion at v. A zero entry makes the form trivially isotropic; the
/// empty and one-variable forms never are.
bool is_isotropic_local(const std::vector<Rational>& d, const Place& v);
bool is_isotropic_local(const QMat& gram, const Place& v);

/// Isotropy over the rationals, decided through the finite list of places
/// that can obstruct: the real place, 2, and the odd primes dividing the
/// entries. Exact in every dimension.
bool is_isotropic_global(const std::vector<Rational>& d);
bool is_isotropic_global(const QMat& gram);

/// A nonzero rational vector x with x^t gram x = 0, or nullopt when the
/// form is anisotropic over the rationals. The witness comes from a shell
/// search in diagonalizing coordinates; shell_cap bounds the coordinate
/// size tried there, and exhausting it (possible only for an isotropic
/// form whose smallest zero is enormous) raises std::runtime_error rather
/// than returning a wrong answer.
std::optional<QVec> find_isotropic_vector(const QMat& gram, long shell_cap = 10000);

/// Evidence that a zero of f mod a power of p lifts to the p-adics:
/// Newton's inequality v_p(F(point)) > 2 v_p(dF/dx_i(point)) at the stated
/// coordinate i.
struct HenselCertificate {
  std::array<Integer, 3> point;  // integer coordinates, not all divisible by p
  Integer prime;
  int coordinate;  // index of the dominating partial derivative
};

/// Rechecks the Newton inequality from scratch. Pre: f has integer
/// coefficients; certificate.point not the zero vector.
bool verify_hensel_certificate(const TernaryCubicForm& f, const HenselCertificate& c);

enum class Solvability { Solvable, Unsolvable, Undecided };
const char* to_cstring(Solvability s);

/// Outcome of the p-adic solvability search for one prime. Exactly one kind
/// of evidence is populated: a rational witness or a Hensel certificate for
/// Solvable, a refuted modulus p^k (no zero mod p^k with a unit coordinate)
/// for Unsolvable, a reason string for Undecided.
struct PadicCubicVerdict {
  Solvability status = Solvability::Undecided;
  Integer prime;
  std::optional<ProjectivePoint> witness;
  std::optional<HenselCertificate> certificate;
  std::optional<Integer> refuted_modulus;
  std::string note;
};

/// Decides whether f = 0 has a nontrivial zero over the p-adic numbers.
/// Strategy: a small exact search first (height presearch_height; a global
/// zero settles every place), then breadth-first lifting of residue
/// solutions through powers of p up to p^depth, reporting the first Hensel
/// certificate found. Trees that die refute solvability outright; trees
/// still alive at p^depth, or past the node budget, give Undecided.
/// Pre: f nonzero, p prime, 1 <= depth <= 60.
PadicCubicVerdict solvable_padic_cubic(const TernaryCubicForm& f, const Integer& p,
                                       int depth = 12,
                                       const Integer& presearch_height = Integer(24));

/// Real solvability of a nonzero ternary cubic. Always true: an odd-degree
/// form changes sign on the sphere. Kept as a named fact so callers spell
/// out the real place rather than silently skipping it.
bool solvable_real_cubic(const TernaryCubicForm& f);

/// Primes that can obstruct local solvability of f. certified means the
/// list is provably complete: outside it, every completion has a zero.
/// Diagonal forms use {2, 3} plus the primes of the coefficient product.
/// Otherwise completeness is established by expressing x^4, y^4, z^4 in
/// the ideal of the partial derivatives; when f is singular no such
/// expression exists and the (still useful) list ships uncertified.
struct RelevantPrimes {
  bool certified = false;
  std::vector<Integer> primes;  // ascending
};
RelevantPrimes relevant_primes_cubic(const TernaryCubicForm& f);

/// Conjunction of local solvability over the real place and every relevant
/// prime. Unsolvable the moment one prime refuses; Solvable when all primes
/// pass and the prime list is certified complete (or an exact rational zero
/// is found, which settles every place at once); Undecided otherwise.
struct EverywhereLocalVerdict {
  Solvability status = Solvability::Undecided;
  bool prime_set_certified = false;
  std::vector<Integer> primes_checked;
  std::vector<PadicCubicVerdict> verdicts;  // aligned with primes_checked
  std::optional<Integer> failing_prime;
  std::optional<ProjectivePoint> rational_point;
  std::string note;
};
EverywhereLocalVerdict everywhere_locally_solvable(const TernaryCubicForm& f,
                                                   int depth = 12);

/// Symmetric 6x6 matrix of a quadratic form in X, Y, Z, W, M, N, ready for
/// the isotropy machinery above.
QMat gram_matrix(const QuadraticForm6& q);

}  // namespace tcf
