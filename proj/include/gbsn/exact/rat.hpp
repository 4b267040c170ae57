#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact/integer.hpp"

#include <ostream>
#include <string>

namespace gbsn {

/// Exact rational number kept in lowest terms with a positive denominator.
/// Zero is always 0/1, so structural equality is numeric equality.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT
  Rat(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw Error("rational with zero denominator");
    normalize();
  }

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  Rat operator-() const { return Rat(-num_, den_, raw_tag{}); }

  Rat& operator+=(const Rat& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
    normalize();
    return *this;
  }
  Rat& operator-=(const Rat& o) { return *this += -o; }
  Rat& operator*=(const Rat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rat& operator/=(const Rat& o) {
    if (o.num_ == 0) throw Error("division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  /// "p/q", or "p" when q == 1.
  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  static Rat parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rat(Integer(trim(text)));
      return Rat(Integer(trim(text.substr(0, slash))),
                 Integer(trim(text.substr(slash + 1))));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error("malformed rational '" + text + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  struct raw_tag {};
  Rat(Integer n, Integer d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error("empty rational");
    std::string out = s.substr(b, e - b + 1);
    if (!out.empty() && out[0] == '+') out.erase(0, 1);
    if (out.empty() || out.find_first_not_of("-0123456789") != std::string::npos)
      throw Error("malformed rational '" + s + "'");
    return out;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Integer g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_;
  Integer den_;
};

using RatVector = std::vector<Rat>;

}  // namespace gbsn
