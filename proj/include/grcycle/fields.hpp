#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "intlinalg.hpp"

// Exact coefficient fields for the lattice-model computations: arbitrary
// precision rationals and prime fields.  No floating point anywhere.

namespace grcycle {

using Rat = boost::multiprecision::cpp_rational;

// Prime-field element carrying its modulus.  Elements created from bare
// integer literals (p == 0) bind to the modulus of the first bound operand
// they meet; fully built matrices always hold bound elements.
struct Fp {
  Int v = 0;
  Int p = 0;

  Fp() = default;
  Fp(Int value) : v(value) {}  // NOLINT: implicit for generic code
  Fp(Int value, Int mod) : v(value), p(mod) { reduce(); }

  void reduce() {
    if (p > 0) {
      v %= p;
      if (v < 0) v += p;
    }
  }

  static Int join(Int a, Int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw InputError("prime-field moduli disagree");
    return a;
  }

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v, join(a.p, b.p)); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v, join(a.p, b.p)); }
  friend Fp operator-(Fp a) { return Fp(-a.v, a.p); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v, join(a.p, b.p)); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  friend bool operator==(Fp a, Fp b) {
    Int m = join(a.p, b.p);
    if (m == 0) return a.v == b.v;
    Int x = a.v % m, y = b.v % m;
    if (x < 0) x += m;
    if (y < 0) y += m;
    return x == y;
  }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  Fp inv() const {
    if (p == 0) {
      if (v == 1 || v == -1) return *this;
      throw InputError("cannot invert an unbound prime-field literal");
    }
    Int a = v % p, m = p, x0 = 0, x1 = 1;
    if (a < 0) a += p;
    if (a == 0) throw InputError("division by zero in F_p");
    Int r0 = m, r1 = a;
    while (r1 != 0) {
      Int q = r0 / r1;
      Int t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (r0 != 1) throw InputError("non-invertible element in F_p");
    return Fp(x0, p);
  }

  friend Fp operator/(Fp a, Fp b) {
    Int m = join(a.p, b.p);
    if (m == 0) {
      if (b.v == 0) throw InputError("division by zero");
      if (a.v % b.v != 0) throw InputError("cannot divide unbound literals");
      return Fp(a.v / b.v);
    }
    Fp bb(b.v, m);
    return Fp(a.v, m) * bb.inv();
  }
};

// ---- uniform helpers over both fields --------------------------------------

inline bool field_is_zero(const Rat& x) { return x == 0; }
inline bool field_is_zero(const Fp& x) { return x == Fp(0); }

inline Rat field_inv(const Rat& x) {
  if (x == 0) throw InputError("division by zero");
  return Rat(1) / x;
}
inline Fp field_inv(const Fp& x) { return x.inv(); }

inline std::string field_str(const Rat& x) { return x.str(); }
inline std::string field_str(const Fp& x) {
  Fp c = x;
  c.reduce();
  return std::to_string(c.v);
}

// Field contexts: how the IO layer and the builders mint coefficients.
struct RatCtx {
  using Field = Rat;
  Rat from_int(Int v) const { return Rat(v); }
  Rat parse(const std::string& s) const {
    try {
      return Rat(s);
    } catch (const std::exception&) {
      throw InputError("cannot parse rational '" + s + "'");
    }
  }
  Int characteristic() const { return 0; }
  bool bound(const Rat&) const { return true; }
};

struct FpCtx {
  Int p = 0;
  using Field = Fp;
  explicit FpCtx(Int prime) : p(prime) {
    if (p < 2) throw InputError("prime field needs a modulus >= 2");
  }
  Fp from_int(Int v) const { return Fp(v, p); }
  Fp parse(const std::string& s) const {
    try {
      return Fp(std::stoll(s), p);
    } catch (const std::invalid_argument&) {
      throw InputError("cannot parse integer '" + s + "'");
    }
  }
  Int characteristic() const { return p; }
  bool bound(const Fp& x) const { return x.p == p; }
};

}  // namespace grcycle
