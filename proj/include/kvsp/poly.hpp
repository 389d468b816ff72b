#pragma once

// Homogeneous polynomial arithmetic over two scalar backends: exact GMP
// rationals and complex doubles.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kvsp/error.hpp"

namespace kvsp {

using Rational = mpq_class;
using Complex = std::complex<double>;

// Exponent vector (m_0, ..., m_n).
using Exponent = std::vector<int>;

// Largest degree a product may reach; nothing in this library needs more than 6.
inline constexpr int kMaxProductDegree = 8;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_int(long v) { return Rational(v); }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
};

template <>
struct ScalarOps<Complex> {
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
  static Complex to_complex(const Complex& x) { return x; }
};

long factorial(int n);
long multinomial(const Exponent& e);

// All exponent vectors of n_vars entries summing to degree, in
// lexicographically decreasing order: (d,0,..), (d-1,1,0,..), ...
std::vector<Exponent> exponents(int n_vars, int degree);

template <class S>
class Form {
 public:
  using Terms = std::map<Exponent, S>;

  Form(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
    if (n_vars <= 0 || degree < 0) throw Error(ErrorKind::InvalidArgument, "bad form shape");
  }

  // Degree-0 form holding a constant.
  static Form constant(int n_vars, const S& c) {
    Form f(n_vars, 0);
    f.add_term(Exponent(n_vars, 0), c);
    return f;
  }

  static Form monomial(Exponent e, const S& c) {
    int d = 0;
    for (int m : e) d += m;
    Form f(static_cast<int>(e.size()), d);
    f.add_term(std::move(e), c);
    return f;
  }

  static Form variable(int n_vars, int i) {
    Exponent e(n_vars, 0);
    e.at(i) = 1;
    return monomial(std::move(e), ScalarOps<S>::from_int(1));
  }

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ScalarOps<S>::from_int(0) : it->second;
  }

  void add_term(Exponent e, const S& c) {
    if (static_cast<int>(e.size()) != n_vars_) throw Error(ErrorKind::InvalidArgument, "exponent arity");
    int d = 0;
    for (int m : e) {
      if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
      d += m;
    }
    if (d != degree_) throw Error(ErrorKind::InvalidArgument, "exponent does not match degree");
    if (ScalarOps<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      S sum = it->second + c;
      if (ScalarOps<S>::is_zero(sum))
        terms_.erase(it);
      else
        it->second = sum;
    }
  }

  Form& operator+=(const Form& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      if (n_vars_ != o.n_vars_) throw Error(ErrorKind::InvalidArgument, "arity mismatch");
      degree_ = o.degree_;
    }
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Form& operator-=(const Form& o) { return *this += (-o); }

  Form operator-() const {
    Form r(n_vars_, degree_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, S(-c));
    return r;
  }

  Form scaled(const S& s) const {
    Form r(n_vars_, degree_);
    if (ScalarOps<S>::is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, S(c * s));
    return r;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Form& f, const S& s) { return f.scaled(s); }
  friend Form operator*(const S& s, const Form& f) { return f.scaled(s); }

  friend Form operator*(const Form& a, const Form& b) {
    if (a.n_vars_ != b.n_vars_) throw Error(ErrorKind::InvalidArgument, "arity mismatch");
    const int d = a.degree_ + b.degree_;
    if (d > kMaxProductDegree) throw Error(ErrorKind::InvalidArgument, "product degree exceeds cap");
    Form r(a.n_vars_, d);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        r.add_term(std::move(e), S(ca * cb));
      }
    }
    return r;
  }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.is_zero() && b.is_zero()) return a.n_vars_ == b.n_vars_;
    return a.n_vars_ == b.n_vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Form& o) const {
    if (n_vars_ != o.n_vars_ || degree_ != o.degree_)
      throw Error(ErrorKind::InvalidArgument, "form shape mismatch");
  }

  int n_vars_;
  int degree_;
  Terms terms_;
};

using RForm = Form<Rational>;
using CForm = Form<Complex>;

// Basis of k[x_0..x_n]_m: multinomial(m; e) * x^e, lex-decreasing in e.
template <class S>
std::vector<Form<S>> multinomial_basis(int n, int m) {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidArgument, "negative basis parameters");
  std::vector<Form<S>> out;
  for (auto& e : exponents(n + 1, m)) {
    const long c = multinomial(e);
    out.push_back(Form<S>::monomial(e, ScalarOps<S>::from_int(c)));
  }
  return out;
}

// N(n,d) = binom(n+d, d) - 1, the dimension of P(k[x_0..x_n]_d).
long space_dim(int n, int d);

template <class S>
Form<S> partial(const Form<S>& f, int i) {
  if (i < 0 || i >= f.n_vars()) throw Error(ErrorKind::InvalidArgument, "variable index");
  if (f.degree() == 0) return Form<S>(f.n_vars(), 0);
  Form<S> r(f.n_vars(), f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent d(e);
    d[i] -= 1;
    r.add_term(std::move(d), S(c * ScalarOps<S>::from_int(e[i])));
  }
  return r;
}

template <class S>
S evaluate(const Form<S>& f, std::span<const S> p) {
  if (static_cast<int>(p.size()) != f.n_vars()) throw Error(ErrorKind::InvalidArgument, "point arity");
  S acc = ScalarOps<S>::from_int(0);
  for (const auto& [e, c] : f.terms()) {
    S term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int j = 0; j < e[k]; ++j) term *= p[k];
    acc += term;
  }
  return acc;
}

template <class S, std::size_t N>
S evaluate(const Form<S>& f, const std::array<S, N>& p) {
  return evaluate(f, std::span<const S>(p));
}

template <class S>
Form<S> linear_form(std::span<const S> coords) {
  const int n = static_cast<int>(coords.size());
  Form<S> l(n, 1);
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    l.add_term(std::move(e), coords[i]);
  }
  return l;
}

// (a x_0 + b x_1 + c x_2 + ...)^d expanded.
template <class S>
Form<S> pow_linear(std::span<const S> coords, int d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "power must be >= 1");
  const Form<S> l = linear_form<S>(coords);
  Form<S> r = l;
  for (int k = 1; k < d; ++k) r = r * l;
  return r;
}

template <class S, std::size_t N>
Form<S> pow_linear(const std::array<S, N>& coords, int d) {
  return pow_linear(std::span<const S>(coords), d);
}

// Coordinates of f in multinomial_basis(n_vars - 1, degree).
template <class S>
std::vector<S> coefficient_vector(const Form<S>& f) {
  std::vector<S> out;
  for (const auto& e : exponents(f.n_vars(), f.degree()))
    out.push_back(S(f.coeff(e) / ScalarOps<S>::from_int(multinomial(e))));
  return out;
}

// Plain monomial coefficients in exponents() order.
template <class S>
std::vector<S> monomial_coefficients(const Form<S>& f) {
  std::vector<S> out;
  for (const auto& e : exponents(f.n_vars(), f.degree())) out.push_back(f.coeff(e));
  return out;
}

CForm to_complex(const RForm& f);

// The Klein quartic x0^3 x1 + x1^3 x2 + x0 x2^3.
template <class S>
Form<S> klein_quartic() {
  Form<S> f(3, 4);
  const S one = ScalarOps<S>::from_int(1);
  f.add_term({3, 1, 0}, one);
  f.add_term({0, 3, 1}, one);
  f.add_term({1, 0, 3}, one);
  return f;
}

// Generic helpers so the same formula can run on scalars or on forms
// (the latter turns a numeric identity into a polynomial identity).
inline Rational half(const Rational& x) { return Rational(x / 2); }
inline Complex half(const Complex& x) { return x * 0.5; }
template <class S>
Form<S> half(const Form<S>& f) {
  return f.scaled(S(ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(2)));
}

inline bool is_zero_value(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero_value(const Complex& x) { return x == Complex(0.0, 0.0); }
template <class S>
bool is_zero_value(const Form<S>& f) {
  return f.is_zero();
}

// "3*x0^2*x1 + -1/2*x2^3" style, terms in lex-decreasing order.
std::string to_string(const RForm& f);
RForm parse_form(const std::string& text, int n_vars);

}  // namespace kvsp
