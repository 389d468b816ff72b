#include "kvsp/poly.hpp"

#include <cctype>
#include <sstream>

namespace kvsp {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::NotApolarPair: return "NotApolarPair";
    case ErrorKind::RankUnexpected: return "RankUnexpected";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::NonTransverse: return "NonTransverse";
    case ErrorKind::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::EntryCount: return "EntryCount";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DegenerateFiber: return "DegenerateFiber";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::DuplicatePoints: return "DuplicatePoints";
    case ErrorKind::IndexError: return "IndexError";
  }
  return "Unknown";
}

long factorial(int n) {
  long r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

long multinomial(const Exponent& e) {
  int total = 0;
  long denom = 1;
  for (int m : e) {
    total += m;
    denom *= factorial(m);
  }
  return factorial(total) / denom;
}

namespace {

void fill_exponents(int remaining_vars, int remaining_degree, Exponent& cur,
                    std::vector<Exponent>& out) {
  if (remaining_vars == 1) {
    cur.push_back(remaining_degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int m = remaining_degree; m >= 0; --m) {
    cur.push_back(m);
    fill_exponents(remaining_vars - 1, remaining_degree - m, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Exponent> exponents(int n_vars, int degree) {
  if (n_vars <= 0 || degree < 0) throw Error(ErrorKind::InvalidArgument, "bad exponent shape");
  std::vector<Exponent> out;
  Exponent cur;
  fill_exponents(n_vars, degree, cur, out);
  return out;
}

long space_dim(int n, int d) {
  if (n < 0 || d < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension parameters");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + d), static_cast<unsigned long>(d));
  return b.get_si() - 1;
}

CForm to_complex(const RForm& f) {
  CForm r(f.n_vars(), f.degree());
  for (const auto& [e, c] : f.terms()) r.add_term(e, ScalarOps<Rational>::to_complex(c));
  return r;
}

std::string to_string(const RForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& e : exponents(f.n_vars(), f.degree())) {
    const Rational c = f.coeff(e);
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    bool any_var = false;
    std::ostringstream vars;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (any_var) vars << "*";
      vars << "x" << k;
      if (e[k] > 1) vars << "^" << e[k];
      any_var = true;
    }
    if (!any_var) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << vars.str();
    }
  }
  return os.str();
}

namespace {

class FormParser {
 public:
  FormParser(const std::string& text, int n_vars) : s_(text), n_vars_(n_vars) {}

  RForm parse() {
    std::vector<std::pair<Exponent, Rational>> terms;
    skip_ws();
    if (pos_ == s_.size()) fail("empty input");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      skip_ws();
      terms.push_back(parse_term());
      if (sign < 0) terms.back().second = -terms.back().second;
      skip_ws();
    }
    int degree = -1;
    for (const auto& [e, c] : terms) {
      if (sgn(c) == 0) continue;
      int d = 0;
      for (int m : e) d += m;
      if (degree >= 0 && d != degree) fail("form is not homogeneous");
      degree = d;
    }
    RForm f(n_vars_, degree < 0 ? 0 : degree);
    for (auto& [e, c] : terms)
      if (sgn(c) != 0) f.add_term(e, c);
    return f;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::InvalidArgument, "parse_form at " + std::to_string(pos_) + ": " + msg);
  }

  long parse_int() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  std::pair<Exponent, Rational> parse_term() {
    Exponent e(n_vars_, 0);
    Rational c = 1;
    while (true) {
      skip_ws();
      if (peek() == 'x') {
        ++pos_;
        const long idx = parse_int();
        if (idx < 0 || idx >= n_vars_) fail("variable index out of range");
        long pw = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          pw = parse_int();
        }
        e[idx] += static_cast<int>(pw);
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
          ++pos_;
        Rational v;
        if (v.set_str(s_.substr(start, pos_ - start), 10) != 0) fail("bad rational");
        if (sgn(v.get_den()) == 0) fail("zero denominator");
        v.canonicalize();
        c *= v;
      } else {
        fail("expected coefficient or variable");
      }
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return {e, c};
  }

  const std::string& s_;
  int n_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RForm parse_form(const std::string& text, int n_vars) {
  return FormParser(text, n_vars).parse();
}

}  // namespace kvsp
