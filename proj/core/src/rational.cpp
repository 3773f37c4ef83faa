#include "paircache/rational.hpp"

#include <stdexcept>
#include <utility>

namespace paircache {

namespace {

void reduce(BigInt& num, BigInt& den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  reduce(num_, den_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  reduce(num_, den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  reduce(num_, den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce(num_, den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce(num_, den_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::string Rational::to_decimal(int significant) const {
  if (significant < 1) throw std::invalid_argument("to_decimal: need at least 1 digit");
  const bool neg = num_ < 0;
  BigInt n = neg ? BigInt(-num_) : num_;
  const BigInt& d = den_;

  std::string int_digits = BigInt(n / d).str();
  BigInt rem = n % d;
  int sig = (int_digits == "0") ? 0 : static_cast<int>(int_digits.size());

  std::string frac;
  bool seen_nonzero = sig > 0;
  while (rem != 0 && sig < significant) {
    rem *= 10;
    int digit = static_cast<int>(rem / d);
    rem %= d;
    frac += static_cast<char>('0' + digit);
    if (digit != 0) seen_nonzero = true;
    if (seen_nonzero) ++sig;
  }

  if (rem != 0) {
    rem *= 10;
    if (rem / d >= 5) {  // round half away from zero, with carry
      std::string all = int_digits + frac;
      int i = static_cast<int>(all.size()) - 1;
      for (; i >= 0; --i) {
        if (all[i] == '9') {
          all[i] = '0';
        } else {
          ++all[i];
          break;
        }
      }
      if (i < 0) all.insert(all.begin(), '1');
      int_digits = all.substr(0, all.size() - frac.size());
      frac = all.substr(all.size() - frac.size());
    }
  }

  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (frac.empty()) frac = "0";
  return (neg ? "-" : "") + int_digits + "." + frac;
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

}  // namespace paircache
