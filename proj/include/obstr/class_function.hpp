#pragma once
/**
 * @file class_function.hpp
 * @brief Exact rational class functions and induced trivial characters.
 */

#include <vector>

#include "obstr/group.hpp"
#include "obstr/rational.hpp"

namespace obstr {

class Subgroup;

/// A rational-valued function on the conjugacy classes of a group.
class ClassFunction {
 public:
  ClassFunction() = default;
  explicit ClassFunction(GroupPtr G);
  ClassFunction(GroupPtr G, std::vector<Rational> values);

  const GroupPtr& group() const { return G_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& on_class(int c) const { return values_[c]; }
  Rational& on_class(int c) { return values_[c]; }
  const Rational& at(int g) const { return values_[G_->class_of(g)]; }

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  ClassFunction& operator*=(const Rational& s);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(ClassFunction a, const Rational& s) { return a *= s; }
  friend ClassFunction operator*(const Rational& s, ClassFunction a) { return a *= s; }
  ClassFunction operator-() const;
  bool operator==(const ClassFunction& o) const { return values_ == o.values_; }

 private:
  GroupPtr G_;
  std::vector<Rational> values_;
};

ClassFunction trivial_character(const GroupPtr& G);
/// 1_{e}^G: |G| at the identity, 0 elsewhere.
ClassFunction regular_character(const GroupPtr& G);
/// 1_T^G(g) = |C_G(g)| * |T cap cls(g)| / |T|.
ClassFunction induced_trivial_char(const GroupPtr& G, const Subgroup& T);
/// (1/|G|) sum_g chi(g) eta(g^{-1}).
Rational inner_product(const ClassFunction& chi, const ClassFunction& eta);

}  // namespace obstr
