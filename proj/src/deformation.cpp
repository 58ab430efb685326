#include "qfock/deformation.hpp"

#include <sstream>
#include <stdexcept>

namespace qfock {

DeformationMatrix DeformationMatrix::constant(int d, Scalar q) {
  if (d < 1) throw std::invalid_argument("deformation matrix: d must be positive");
  return DeformationMatrix(d, std::vector<Scalar>(static_cast<std::size_t>(d * d), q), true);
}

DeformationMatrix DeformationMatrix::from_entries(int d, std::vector<Scalar> entries) {
  if (d < 1) throw std::invalid_argument("deformation matrix: d must be positive");
  if (entries.size() != static_cast<std::size_t>(d * d))
    throw std::invalid_argument("deformation matrix: expected d*d entries");
  bool constant = true;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Scalar& a = entries[static_cast<std::size_t>(i * d + j)];
      if (!(a == entries[static_cast<std::size_t>(j * d + i)]))
        throw std::invalid_argument("deformation matrix must be symmetric");
      if (!(a == entries[0])) constant = false;
    }
  }
  return DeformationMatrix(d, std::move(entries), constant);
}

DeformationMatrix DeformationMatrix::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("d") || !doc.contains("entries"))
    throw std::invalid_argument("deformation JSON needs keys 'd' and 'entries'");
  int d = doc.at("d").get<int>();
  const auto& rows = doc.at("entries");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("deformation JSON: entries must have d rows");
  std::vector<Scalar> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("deformation JSON: each row must have d entries");
    for (const auto& e : row) {
      if (e.is_string())
        entries.emplace_back(parse_rational(e.get<std::string>()));
      else if (e.is_number())
        entries.emplace_back(Rational(e.get<double>()));
      else
        throw std::invalid_argument("deformation JSON: entries must be strings or numbers");
    }
  }
  return from_entries(d, std::move(entries));
}

const Scalar& DeformationMatrix::scalar() const {
  if (!constant_) throw std::logic_error("deformation matrix is not constant");
  return entries_.front();
}

bool DeformationMatrix::is_numeric() const {
  for (const auto& e : entries_)
    if (e.mode() != Scalar::Mode::Rational) return false;
  return true;
}

Rational DeformationMatrix::max_abs() const {
  Rational m(0);
  for (const auto& e : entries_) {
    Rational a = abs(e.as_rational());
    if (a > m) m = a;
  }
  return m;
}

void DeformationMatrix::require_open_interval() const {
  if (!is_numeric()) return;
  if (max_abs() >= 1) throw std::domain_error("deformation parameters must satisfy |q_ij| < 1");
}

DeformationMatrix DeformationMatrix::with_entries_evaluated(const Rational& q0) const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.emplace_back(e.evaluate(q0));
  return DeformationMatrix(d_, std::move(out), constant_);
}

std::string DeformationMatrix::to_string() const {
  if (constant_) return "q=" + entries_.front().to_string();
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < d_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < d_; ++j) os << (j ? ", " : "") << entries_[static_cast<std::size_t>(i * d_ + j)];
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace qfock
