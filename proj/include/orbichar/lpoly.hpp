#pragma once

#include <map>
#include <string>

#include "orbichar/rational.hpp"

namespace orbichar {

// Element of Z[L^Q]: a finite sum of integer multiples of rational powers of
// the class L of the affine line. Exponents are exact rationals; no zero
// coefficients are stored.
struct LPolynomial {
  std::map<Rational, long long> terms;  // exponent -> coefficient

  LPolynomial() = default;
  LPolynomial(long long c) {
    if (c != 0) terms[Rational(0)] = c;
  }

  static LPolynomial power_of_l(const Rational& q, long long c = 1) {
    LPolynomial p;
    if (c != 0) p.terms[q] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  LPolynomial& operator+=(const LPolynomial& o) {
    for (const auto& [q, c] : o.terms) {
      auto it = terms.find(q);
      if (it == terms.end()) {
        terms.emplace(q, c);
      } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
      }
    }
    return *this;
  }

  LPolynomial operator+(const LPolynomial& o) const {
    LPolynomial r = *this;
    r += o;
    return r;
  }

  LPolynomial operator-() const {
    LPolynomial r;
    for (const auto& [q, c] : terms) r.terms[q] = -c;
    return r;
  }

  LPolynomial operator-(const LPolynomial& o) const { return *this + (-o); }

  LPolynomial operator*(const LPolynomial& o) const {
    LPolynomial r;
    for (const auto& [q1, c1] : terms)
      for (const auto& [q2, c2] : o.terms) {
        Rational q = q1 + q2;
        auto it = r.terms.find(q);
        if (it == r.terms.end()) {
          r.terms.emplace(q, c1 * c2);
        } else {
          it->second += c1 * c2;
          if (it->second == 0) r.terms.erase(it);
        }
      }
    return r;
  }

  friend bool operator==(const LPolynomial& a, const LPolynomial& b) { return a.terms == b.terms; }
  friend bool operator<(const LPolynomial& a, const LPolynomial& b) { return a.terms < b.terms; }

  // checks that the value is a plain integer (only the L^0 term)
  bool is_integer() const {
    if (terms.empty()) return true;
    return terms.size() == 1 && terms.begin()->first == Rational(0);
  }
  long long integer_value() const {
    if (terms.empty()) return 0;
    if (!is_integer()) throw std::logic_error("LPolynomial is not an integer");
    return terms.begin()->second;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [q, c] : terms) {
      if (!first) s += c >= 0 ? " + " : " - ";
      long long a = (!first && c < 0) ? -c : c;
      first = false;
      if (q.is_zero()) {
        s += std::to_string(a);
      } else {
        if (a != 1) s += std::to_string(a) + "*";
        s += "L";
        if (!(q == Rational(1))) s += "^(" + q.str() + ")";
      }
    }
    return s;
  }
};

}  // namespace orbichar
