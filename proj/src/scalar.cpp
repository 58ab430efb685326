#include "qfock/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfock {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (is_digit(c)) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("not a number: " + std::string(text));
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string exp_text(text.substr(pos));
    if (exp_text.empty()) throw std::invalid_argument("bad exponent: " + std::string(text));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + std::string(text));
    }
    if (used != exp_text.size()) throw std::invalid_argument("bad exponent: " + std::string(text));
    pos = text.size();
  }
  if (pos != text.size()) throw std::invalid_argument("not a number: " + std::string(text));
  if (exponent > 4000 || exponent < -4000) throw std::invalid_argument("exponent out of range");

  mpz_class mantissa(digits, 10);
  long scale = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational r = num / den;
  r.canonicalize();
  return r;
}

double to_nearest_double(const Rational& r) {
  // mpq_get_d truncates toward zero; pick the nearer of the two neighbours.
  double t = r.get_d();
  if (!std::isfinite(t)) return t;
  double away = std::nextafter(t, sgn(r) >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  Rational dt = abs(r - Rational(t));
  Rational da = abs(r - Rational(away));
  if (dt < da) return t;
  if (da < dt) return away;
  // Tie: the even mantissa wins.
  int e = 0;
  double m = std::frexp(t, &e);
  double scaled = std::ldexp(m, 53);
  return std::fmod(scaled, 2.0) == 0.0 ? t : away;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational frac(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(Rational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

QPoly::QPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

QPoly QPoly::variable() { return monomial(Rational(1), 1); }

QPoly QPoly::monomial(Rational coefficient, int degree) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = std::move(coefficient);
  return QPoly(std::move(c));
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QPoly::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational QPoly::evaluate(const Rational& at) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const QPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0) continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) out[a + b] += coeffs_[a] * o.coeffs_[b];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

QPoly& QPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  remainder = a;
  std::vector<Rational> q;
  if (a.degree() >= b.degree()) q.resize(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const Rational& lead = b.leading();
  while (!remainder.is_zero() && remainder.degree() >= b.degree()) {
    int shift = remainder.degree() - b.degree();
    Rational factor = remainder.leading() / lead;
    q[static_cast<std::size_t>(shift)] = factor;
    for (int k = 0; k <= b.degree(); ++k)
      remainder.coeffs_[static_cast<std::size_t>(k + shift)] -= factor * b.coeffs_[static_cast<std::size_t>(k)];
    remainder.trim();
  }
  quotient = QPoly(std::move(q));
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly quo, rem;
    divmod(a, b, quo, rem);
    a = std::move(b);
    b = std::move(rem);
    if (!b.is_zero()) b *= Rational(1) / b.leading();
  }
  if (!a.is_zero()) a *= Rational(1) / a.leading();
  return a;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (k == 0) {
      os << mag.get_str();
    } else {
      if (!unit) os << mag.get_str() << "*";
      os << "q";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- QRatFunc

QRatFunc::QRatFunc(QPoly numerator, QPoly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void QRatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = QPoly(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    QPoly g = QPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      QPoly r;
      QPoly::divmod(num_, g, num_, r);
      QPoly::divmod(den_, g, den_, r);
    }
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational QRatFunc::evaluate(const Rational& at) const {
  Rational d = den_.evaluate(at);
  if (d == 0) throw std::domain_error("rational function pole at evaluation point");
  return num_.evaluate(at) / d;
}

QRatFunc& QRatFunc::operator+=(const QRatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

QRatFunc& QRatFunc::operator-=(const QRatFunc& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

QRatFunc& QRatFunc::operator*=(const QRatFunc& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

QRatFunc& QRatFunc::operator/=(const QRatFunc& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string QRatFunc::to_string() const {
  if (den_.is_constant() && den_.coefficient(0) == 1) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::q() { return Scalar(QPoly::variable()); }

Scalar Scalar::fraction(long num, long den) { return Scalar(frac(num, den)); }

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, qfock::Rational>)
          return v == 0;
        else
          return v.is_zero();
      },
      value_);
}

bool Scalar::is_one() const { return *this == Scalar(1); }

const Rational& Scalar::as_rational() const {
  if (mode() != Mode::Rational) throw std::logic_error("scalar is not in rational mode");
  return std::get<qfock::Rational>(value_);
}

QPoly Scalar::as_poly() const {
  switch (mode()) {
    case Mode::Rational:
      return QPoly(std::get<qfock::Rational>(value_));
    case Mode::Poly:
      return std::get<QPoly>(value_);
    case Mode::RatFunc: {
      const auto& f = std::get<QRatFunc>(value_);
      if (f.denominator().is_constant()) return f.numerator();
      throw std::logic_error("rational function is not a polynomial");
    }
  }
  return {};
}

QRatFunc Scalar::as_ratfunc() const {
  if (mode() == Mode::RatFunc) return std::get<QRatFunc>(value_);
  return QRatFunc(as_poly());
}

Rational Scalar::evaluate(const qfock::Rational& at) const {
  switch (mode()) {
    case Mode::Rational:
      return std::get<qfock::Rational>(value_);
    case Mode::Poly:
      return std::get<QPoly>(value_).evaluate(at);
    case Mode::RatFunc:
      return std::get<QRatFunc>(value_).evaluate(at);
  }
  return {};
}

double Scalar::float_eval(double q0) const { return to_nearest_double(evaluate(qfock::Rational(q0))); }

Rational Scalar::magnitude() const {
  auto max_abs = [](const QPoly& p) {
    qfock::Rational m(0);
    for (const auto& c : p.coefficients())
      if (abs(c) > m) m = abs(c);
    return m;
  };
  switch (mode()) {
    case Mode::Rational:
      return abs(std::get<qfock::Rational>(value_));
    case Mode::Poly:
      return max_abs(std::get<QPoly>(value_));
    case Mode::RatFunc:
      return max_abs(std::get<QRatFunc>(value_).numerator());
  }
  return {};
}

Scalar& Scalar::operator+=(const Scalar& o) {
  Mode m = std::max(mode(), o.mode());
  if (m == Mode::Rational) {
    std::get<qfock::Rational>(value_) += std::get<qfock::Rational>(o.value_);
  } else if (m == Mode::Poly) {
    QPoly p = as_poly();
    p += o.as_poly();
    value_ = std::move(p);
  } else {
    QRatFunc f = as_ratfunc();
    f += o.as_ratfunc();
    value_ = std::move(f);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  Mode m = std::max(mode(), o.mode());
  if (m == Mode::Rational) {
    std::get<qfock::Rational>(value_) -= std::get<qfock::Rational>(o.value_);
  } else if (m == Mode::Poly) {
    QPoly p = as_poly();
    p -= o.as_poly();
    value_ = std::move(p);
  } else {
    QRatFunc f = as_ratfunc();
    f -= o.as_ratfunc();
    value_ = std::move(f);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Mode m = std::max(mode(), o.mode());
  if (m == Mode::Rational) {
    std::get<qfock::Rational>(value_) *= std::get<qfock::Rational>(o.value_);
  } else if (m == Mode::Poly) {
    if (o.mode() == Mode::Rational) {
      QPoly p = as_poly();
      p *= std::get<qfock::Rational>(o.value_);
      value_ = std::move(p);
    } else {
      QPoly p = as_poly();
      p *= o.as_poly();
      value_ = std::move(p);
    }
  } else {
    QRatFunc f = as_ratfunc();
    f *= o.as_ratfunc();
    value_ = std::move(f);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("scalar division by zero");
  Mode m = std::max(mode(), o.mode());
  if (m == Mode::Rational) {
    std::get<qfock::Rational>(value_) /= std::get<qfock::Rational>(o.value_);
  } else if (o.mode() == Mode::Rational && mode() == Mode::Poly) {
    // Division by a constant keeps the polynomial a polynomial, but the
    // mode contract says division lands in RatFunc.
    QPoly p = as_poly();
    p *= qfock::Rational(1) / std::get<qfock::Rational>(o.value_);
    value_ = QRatFunc(std::move(p));
  } else {
    QRatFunc f = as_ratfunc();
    f /= o.as_ratfunc();
    value_ = std::move(f);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  Scalar::Mode m = std::max(a.mode(), b.mode());
  if (m == Scalar::Mode::Rational) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  if (m == Scalar::Mode::Poly) return a.as_poly() == b.as_poly();
  return a.as_ratfunc() == b.as_ratfunc();
}

Scalar Scalar::pow(int exponent) const {
  if (exponent < 0) return Scalar(1) / pow(-exponent);
  Scalar result(1);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  switch (mode()) {
    case Mode::Rational:
      return std::get<qfock::Rational>(value_).get_str();
    case Mode::Poly:
      return std::get<QPoly>(value_).to_string();
    case Mode::RatFunc:
      return std::get<QRatFunc>(value_).to_string();
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << p.to_string(); }

}  // namespace qfock
