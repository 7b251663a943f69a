#pragma once

// Finite-support vectors of l2(Z) and of l2(Z; L2(-pi, pi)).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stark/errors.hpp"

namespace stark {

/// Polynomial in the field coordinate y with complex coefficients (monomial basis).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, Complex c = 1.0);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  Complex coeff(int j) const { return j < static_cast<int>(coeffs_.size()) ? coeffs_[j] : Complex{}; }

  Complex operator()(Complex y) const;
  /// Coefficient-wise conjugate: the analytic extension of conj(p(y)) for real y.
  Polynomial conj() const;
  /// q(t) = p(center + half_width * t).
  Polynomial rescaled(double center, double half_width) const;
  Complex integral(double lo, double hi) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(Complex s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

/// Finite-support element of l2(Z).
struct SiteVector {
  std::map<int, Complex> values;

  static SiteVector unit(int site, Complex value = 1.0) { return SiteVector{{{site, value}}}; }
  bool empty() const noexcept { return values.empty(); }
  Complex at(int n) const;
  double norm2() const;
  std::optional<std::pair<int, int>> support() const;
};

/// sum_n a_n conj(b_n).
Complex inner(const SiteVector& a, const SiteVector& b);

inline constexpr int kDefaultMaxDegree = 8;

/// Finite-support lattice vector with a single polynomial profile per site on
/// the whole interval (-pi, pi); these admit analytic continuation in y.
class AnalyticVector {
 public:
  explicit AnalyticVector(int max_degree = kDefaultMaxDegree) : max_degree_(max_degree) {}

  /// The vector chi * 1(y): unit constant profile at one site.
  static AnalyticVector unit_constant(int site, Complex value = 1.0);

  /// Throws DomainError if the profile degree exceeds max_degree.
  AnalyticVector& set(int site, Polynomial profile);
  const std::map<int, Polynomial>& sites() const noexcept { return sites_; }
  int max_degree() const noexcept { return max_degree_; }
  bool empty() const noexcept { return sites_.empty(); }
  std::optional<std::pair<int, int>> support() const;

 private:
  int max_degree_;
  std::map<int, Polynomial> sites_;
};

/// Element (u1, u2) of the extended space: field component plus impurity channel.
struct ExtendedVector {
  AnalyticVector field;
  SiteVector channel;
};

/// Finite-support element of l2(Z; L2(-pi, pi)) with piecewise polynomial
/// profiles. All sites share the breakpoints -pi = b_0 < ... < b_K = pi.
class LatticeFieldVector {
 public:
  LatticeFieldVector();
  explicit LatticeFieldVector(std::vector<double> breaks);
  LatticeFieldVector(const AnalyticVector& v);  // NOLINT: implicit by intent

  static LatticeFieldVector unit_constant(int site, Complex value = 1.0);

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  int pieces() const noexcept { return static_cast<int>(breaks_.size()) - 1; }
  const std::map<int, std::vector<Polynomial>>& sites() const noexcept { return sites_; }

  /// Profile polynomials of one site, one per piece; zero polynomials if absent.
  std::vector<Polynomial> profile(int site) const;
  void set_profile(int site, std::vector<Polynomial> pieces);
  /// Same profile on every piece.
  void set_uniform(int site, const Polynomial& p);

  /// Re-expressed on the union of its own breakpoints and extra.
  LatticeFieldVector refined(const std::vector<double>& extra) const;

  Complex value(int site, double y) const;
  double norm2() const;
  std::optional<std::pair<int, int>> support() const;

  LatticeFieldVector& operator+=(const LatticeFieldVector& o);
  LatticeFieldVector& operator-=(const LatticeFieldVector& o);
  LatticeFieldVector& operator*=(Complex s);

 private:
  std::vector<double> breaks_;
  std::map<int, std::vector<Polynomial>> sites_;
};

/// sum_n int a_n(y) conj(b_n(y)) dy, exact.
Complex inner(const LatticeFieldVector& a, const LatticeFieldVector& b);

/// Sorted union of two breakpoint lists (duplicates within 1e-15 merged).
std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace stark
