#include "stark/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stark/numerics.hpp"

namespace stark {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int degree, Complex c) {
  std::vector<Complex> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex y) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Polynomial Polynomial::conj() const {
  std::vector<Complex> c(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), c.begin(), [](Complex v) { return std::conj(v); });
  return Polynomial(std::move(c));
}

Polynomial Polynomial::rescaled(double center, double half_width) const {
  // Horner in polynomial arithmetic: p(c + w t).
  const Polynomial lin({center, half_width});
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * lin;
    acc += Polynomial::constant(*it);
  }
  return acc;
}

Complex Polynomial::integral(double lo, double hi) const {
  // Antiderivative sum c_j y^{j+1} / (j + 1) by Horner at both ends.
  Complex up{}, down{};
  for (int j = degree(); j >= 0; --j) {
    up = up * hi + coeffs_[j] / static_cast<double>(j + 1);
    down = down * lo + coeffs_[j] / static_cast<double>(j + 1);
  }
  return up * hi - down * lo;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Complex SiteVector::at(int n) const {
  const auto it = values.find(n);
  return it == values.end() ? Complex{} : it->second;
}

double SiteVector::norm2() const {
  double s = 0.0;
  for (const auto& [n, v] : values) s += std::norm(v);
  return s;
}

std::optional<std::pair<int, int>> SiteVector::support() const {
  if (values.empty()) return std::nullopt;
  return std::pair{values.begin()->first, values.rbegin()->first};
}

Complex inner(const SiteVector& a, const SiteVector& b) {
  Complex s{};
  for (const auto& [n, v] : a.values) s += v * std::conj(b.at(n));
  return s;
}

AnalyticVector AnalyticVector::unit_constant(int site, Complex value) {
  AnalyticVector v;
  v.set(site, Polynomial::constant(value));
  return v;
}

AnalyticVector& AnalyticVector::set(int site, Polynomial profile) {
  if (profile.degree() > max_degree_) {
    throw DomainError("AnalyticVector: profile degree " + std::to_string(profile.degree()) +
                      " exceeds " + std::to_string(max_degree_));
  }
  if (profile.is_zero()) {
    sites_.erase(site);
  } else {
    sites_[site] = std::move(profile);
  }
  return *this;
}

std::optional<std::pair<int, int>> AnalyticVector::support() const {
  if (sites_.empty()) return std::nullopt;
  return std::pair{sites_.begin()->first, sites_.rbegin()->first};
}

LatticeFieldVector::LatticeFieldVector() : breaks_{-kPi, kPi} {}

LatticeFieldVector::LatticeFieldVector(std::vector<double> breaks) : breaks_(std::move(breaks)) {
  if (breaks_.size() < 2 || breaks_.front() != -kPi || breaks_.back() != kPi ||
      !std::is_sorted(breaks_.begin(), breaks_.end())) {
    throw DomainError("LatticeFieldVector: breakpoints must increase from -pi to pi");
  }
}

LatticeFieldVector::LatticeFieldVector(const AnalyticVector& v) : LatticeFieldVector() {
  for (const auto& [n, p] : v.sites()) sites_[n] = {p};
}

LatticeFieldVector LatticeFieldVector::unit_constant(int site, Complex value) {
  LatticeFieldVector v;
  v.set_uniform(site, Polynomial::constant(value));
  return v;
}

std::vector<Polynomial> LatticeFieldVector::profile(int site) const {
  const auto it = sites_.find(site);
  if (it == sites_.end()) return std::vector<Polynomial>(pieces());
  return it->second;
}

void LatticeFieldVector::set_profile(int site, std::vector<Polynomial> pieces) {
  if (static_cast<int>(pieces.size()) != this->pieces()) {
    throw DomainError("LatticeFieldVector: profile piece count mismatch");
  }
  if (std::all_of(pieces.begin(), pieces.end(), [](const Polynomial& p) { return p.is_zero(); })) {
    sites_.erase(site);
  } else {
    sites_[site] = std::move(pieces);
  }
}

void LatticeFieldVector::set_uniform(int site, const Polynomial& p) {
  set_profile(site, std::vector<Polynomial>(pieces(), p));
}

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  std::vector<double> uniq;
  for (double x : out) {
    if (x < -kPi || x > kPi) continue;
    if (uniq.empty() || x - uniq.back() > 1e-15) uniq.push_back(x);
  }
  uniq.front() = -kPi;
  if (uniq.back() != kPi) {
    if (kPi - uniq.back() <= 1e-15) uniq.back() = kPi;
    else uniq.push_back(kPi);
  }
  return uniq;
}

LatticeFieldVector LatticeFieldVector::refined(const std::vector<double>& extra) const {
  std::vector<double> sorted_extra = extra;
  std::sort(sorted_extra.begin(), sorted_extra.end());
  LatticeFieldVector out(merge_breaks(breaks_, sorted_extra));
  for (const auto& [n, polys] : sites_) {
    std::vector<Polynomial> pieces(out.pieces());
    std::size_t src = 0;
    for (int k = 0; k < out.pieces(); ++k) {
      const double mid = 0.5 * (out.breaks_[k] + out.breaks_[k + 1]);
      while (src + 1 < polys.size() && mid > breaks_[src + 1]) ++src;
      pieces[k] = polys[src];
    }
    out.sites_[n] = std::move(pieces);
  }
  return out;
}

Complex LatticeFieldVector::value(int site, double y) const {
  const auto it = sites_.find(site);
  if (it == sites_.end()) return {};
  const auto pos = std::upper_bound(breaks_.begin(), breaks_.end(), y);
  const auto k = std::clamp<std::ptrdiff_t>(pos - breaks_.begin() - 1, 0, pieces() - 1);
  return it->second[k](y);
}

double LatticeFieldVector::norm2() const { return inner(*this, *this).real(); }

std::optional<std::pair<int, int>> LatticeFieldVector::support() const {
  if (sites_.empty()) return std::nullopt;
  return std::pair{sites_.begin()->first, sites_.rbegin()->first};
}

namespace {

template <typename Op>
LatticeFieldVector combine(const LatticeFieldVector& a, const LatticeFieldVector& b, Op op) {
  const auto breaks = merge_breaks(a.breaks(), b.breaks());
  auto ra = a.refined(breaks);
  const auto rb = b.refined(breaks);
  for (const auto& [n, polys] : rb.sites()) {
    auto mine = ra.profile(n);
    for (std::size_t k = 0; k < mine.size(); ++k) op(mine[k], polys[k]);
    ra.set_profile(n, std::move(mine));
  }
  return ra;
}

}  // namespace

LatticeFieldVector& LatticeFieldVector::operator+=(const LatticeFieldVector& o) {
  *this = combine(*this, o, [](Polynomial& x, const Polynomial& y) { x += y; });
  return *this;
}

LatticeFieldVector& LatticeFieldVector::operator-=(const LatticeFieldVector& o) {
  *this = combine(*this, o, [](Polynomial& x, const Polynomial& y) { x -= y; });
  return *this;
}

LatticeFieldVector& LatticeFieldVector::operator*=(Complex s) {
  for (auto& [n, polys] : sites_) {
    for (auto& p : polys) p *= s;
  }
  return *this;
}

Complex inner(const LatticeFieldVector& a, const LatticeFieldVector& b) {
  const auto breaks = merge_breaks(a.breaks(), b.breaks());
  const auto ra = a.refined(breaks);
  const auto rb = b.refined(breaks);
  Complex s{};
  for (const auto& [n, polys] : ra.sites()) {
    const auto other = rb.profile(n);
    for (int k = 0; k < ra.pieces(); ++k) {
      s += (polys[k] * other[k].conj()).integral(breaks[k], breaks[k + 1]);
    }
  }
  return s;
}

}  // namespace stark
