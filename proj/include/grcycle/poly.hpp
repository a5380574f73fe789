#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"

// Dense univariate polynomials and reduced rational functions over an exact
// field.  The rational-function layer is what matrix entries are made of:
// poles at u = 0 give Laurent behaviour, poles at the pi_i give the
// generic-fibre lattices, and the membership predicates decide divisibility
// questions exactly.

namespace grcycle {

template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
  static Poly monomial(K v, int deg) {
    std::vector<K> c(static_cast<std::size_t>(deg) + 1, K(0));
    c[static_cast<std::size_t>(deg)] = std::move(v);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int d) const {
    if (d < 0 || d > degree()) return K(0);
    return c_[static_cast<std::size_t>(d)];
  }
  const K& leading() const {
    if (is_zero()) throw InputError("zero polynomial has no leading coefficient");
    return c_.back();
  }

  // u-adic valuation; degree+1 sentinel never needed: caller checks is_zero
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!field_is_zero(c_[i])) return static_cast<int>(i);
    return 0;
  }

  bool is_monomial() const {
    int seen = 0;
    for (const auto& x : c_)
      if (!field_is_zero(x)) ++seen;
    return seen <= 1;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) { return Poly::constant(K(-1)) * a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }

  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> c(c_.size() - 1, K(0));
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * K(static_cast<Int>(i));
    return Poly(std::move(c));
  }

  K eval(const K& x) const {
    K r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  // p(u) -> p(t u)
  Poly scale_arg(const K& t) const {
    std::vector<K> c = c_;
    K f(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = c[i] * f;
      f = f * t;
    }
    return Poly(std::move(c));
  }

  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw InputError("polynomial division by zero");
    std::vector<K> rem = a.c_;
    int db = b.degree();
    K lead_inv = field_inv(b.leading());
    std::vector<K> quo;
    if (static_cast<int>(rem.size()) - 1 >= db)
      quo.assign(rem.size() - static_cast<std::size_t>(db), K(0));
    for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
      K f = rem[static_cast<std::size_t>(d)] * lead_inv;
      if (!field_is_zero(f)) {
        quo[static_cast<std::size_t>(d - db)] = f;
        for (int i = 0; i <= db; ++i)
          rem[static_cast<std::size_t>(d - db + i)] =
              rem[static_cast<std::size_t>(d - db + i)] - f * b.c_[static_cast<std::size_t>(i)];
      }
    }
    q = Poly(std::move(quo));
    if (static_cast<int>(rem.size()) > db) rem.resize(static_cast<std::size_t>(db < 0 ? 0 : db));
    r = Poly(std::move(rem));
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly q, r;
      divrem(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    K inv = field_inv(a.leading());
    std::vector<K> c = a.c_;
    for (auto& x : c) x = x * inv;
    return Poly(std::move(c));
  }

  // multiplicity of the root at x
  int root_multiplicity(const K& x) const {
    if (is_zero()) throw InputError("root multiplicity of the zero polynomial");
    Poly lin(std::vector<K>{-x, K(1)});
    Poly cur = *this;
    int m = 0;
    while (true) {
      Poly q, r;
      divrem(cur, lin, q, r);
      if (!r.is_zero()) return m;
      cur = std::move(q);
      ++m;
      if (cur.is_zero()) return m;
    }
  }

  std::string str(const std::string& var = "u") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (field_is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      s += field_str(c_[i]);
      if (i > 0) s += "*" + var + "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && field_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

// Reduced fraction of polynomials; denominator monic and coprime to the
// numerator.  Entries of every lattice matrix live here.
template <class K>
class Frac {
 public:
  Frac() : num_(), den_(Poly<K>::constant(K(1))) {}
  Frac(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  static Frac of(Poly<K> p) { return Frac(std::move(p), Poly<K>::constant(K(1))); }
  static Frac constant(K v) { return of(Poly<K>::constant(std::move(v))); }
  static Frac monomial(K v, int deg) {
    if (deg >= 0) return of(Poly<K>::monomial(std::move(v), deg));
    return Frac(Poly<K>::constant(std::move(v)), Poly<K>::monomial(K(1), -deg));
  }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Frac operator-(const Frac& a) { return Frac(-a.num_, a.den_); }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.is_zero()) throw InputError("division by the zero rational function");
    return Frac(a.num_ * b.den_, a.den_ * b.num_);
  }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }

  bool operator==(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Frac& o) const { return !(*this == o); }

  Frac derivative() const {
    return Frac(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  // valuation of the zero/pole at x; 0 for the zero function by convention
  int valuation_at(const K& x) const {
    if (is_zero()) return 0;
    return num_.root_multiplicity(x) - den_.root_multiplicity(x);
  }

  int valuation0() const { return valuation_at(K(0)); }

  Frac scale_arg(const K& t) const { return Frac(num_.scale_arg(t), den_.scale_arg(t)); }

  // coefficient of u^d in the Laurent expansion, for fractions whose reduced
  // denominator is a u-power (u-Laurent entries)
  bool is_u_laurent() const { return den_.is_monomial(); }
  K laurent_coeff(int d) const {
    if (!is_u_laurent()) throw InputError("entry is not Laurent in u");
    if (is_zero()) return K(0);
    int shift = den_.degree();
    K lead = den_.coeff(shift);
    return num_.coeff(d + shift) * field_inv(lead);
  }
  int laurent_mindeg() const {  // valid for nonzero u-Laurent entries
    return num_.valuation() - den_.degree();
  }
  int laurent_maxdeg() const { return num_.degree() - den_.degree(); }

  // drop Laurent terms of degree >= cut (u-Laurent entries only)
  Frac truncate_above(int cut) const {
    if (is_zero()) return *this;
    if (!is_u_laurent()) throw InputError("truncation needs a u-Laurent entry");
    int shift = den_.degree();
    std::vector<K> c = num_.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (static_cast<int>(i) - shift >= cut) c[i] = K(0);
    return Frac(Poly<K>(std::move(c)), den_);
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw InputError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(K(1));
      return;
    }
    Poly<K> g = Poly<K>::gcd(num_, den_);
    if (g.degree() > 0) {
      Poly<K> q, r;
      Poly<K>::divrem(num_, g, q, r);
      num_ = q;
      Poly<K>::divrem(den_, g, q, r);
      den_ = q;
    }
    K inv = field_inv(den_.leading());
    if (!(den_.leading() == K(1))) {
      std::vector<K> nc = num_.coeffs(), dc = den_.coeffs();
      for (auto& x : nc) x = x * inv;
      for (auto& x : dc) x = x * inv;
      num_ = Poly<K>(std::move(nc));
      den_ = Poly<K>(std::move(dc));
    }
  }

  Poly<K> num_, den_;
};

}  // namespace grcycle
