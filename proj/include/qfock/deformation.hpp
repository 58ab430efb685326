// Symmetric deformation matrix (q_ij). The constant matrix q_ij = q is the
// ordinary q-deformation and is flagged so the Gram builder can take the
// permutation-sum path.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qfock/scalar.hpp"

namespace qfock {

class DeformationMatrix {
 public:
  /// q_ij = q for all i, j.
  static DeformationMatrix constant(int d, Scalar q);
  /// Row-major d x d entries; throws std::invalid_argument if not symmetric.
  static DeformationMatrix from_entries(int d, std::vector<Scalar> entries);
  /// {"d": 2, "entries": [["1/3", "1/5"], ["1/5", -0.25]]}. Strings are
  /// exact fractions or decimals; JSON numbers are taken at their exact
  /// binary value.
  static DeformationMatrix from_json(const nlohmann::json& doc);

  int d() const { return d_; }
  /// Letters are 1-based.
  const Scalar& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>((i - 1) * d_ + (j - 1))];
  }
  bool is_constant() const { return constant_; }
  /// The common value of a constant matrix.
  const Scalar& scalar() const;

  /// True when every entry is formal-free (Rational mode).
  bool is_numeric() const;
  /// max |q_ij| at the numeric values; entries must be numeric.
  Rational max_abs() const;
  /// Throws std::domain_error unless every |q_ij| < 1 (numeric matrices
  /// only; formal matrices pass).
  void require_open_interval() const;

  DeformationMatrix with_entries_evaluated(const Rational& q0) const;

  std::string to_string() const;

 private:
  DeformationMatrix(int d, std::vector<Scalar> entries, bool constant)
      : d_(d), entries_(std::move(entries)), constant_(constant) {}
  int d_ = 1;
  std::vector<Scalar> entries_;
  bool constant_ = true;
};

}  // namespace qfock
