#include "obstr/class_function.hpp"

#include "obstr/lattice.hpp"

namespace obstr {

ClassFunction::ClassFunction(GroupPtr G) : G_(std::move(G)), values_(G_->num_classes(), Rational(0)) {}

ClassFunction::ClassFunction(GroupPtr G, std::vector<Rational> values) : G_(std::move(G)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != G_->num_classes())
    throw Error(ErrorCode::InvalidData, "class function has the wrong number of values");
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator*=(const Rational& s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ClassFunction ClassFunction::operator-() const {
  ClassFunction r = *this;
  for (auto& v : r.values_) v = -v;
  return r;
}

ClassFunction trivial_character(const GroupPtr& G) {
  return ClassFunction(G, std::vector<Rational>(G->num_classes(), Rational(1)));
}

ClassFunction regular_character(const GroupPtr& G) {
  ClassFunction r(G);
  r.on_class(0) = G->order();
  return r;
}

ClassFunction induced_trivial_char(const GroupPtr& G, const Subgroup& T) {
  ClassFunction r(G);
  std::vector<long long> hits(G->num_classes(), 0);
  for (int t : T.members()) ++hits[G->class_of(t)];
  for (int c = 0; c < G->num_classes(); ++c)
    if (hits[c]) r.on_class(c) = Rational(static_cast<long long>(G->centralizer_order(c)) * hits[c], T.order());
  return r;
}

Rational inner_product(const ClassFunction& chi, const ClassFunction& eta) {
  const auto& G = chi.group();
  Rational s = 0;
  for (int c = 0; c < G->num_classes(); ++c) {
    if (chi.on_class(c).is_zero()) continue;
    s += chi.on_class(c) * eta.on_class(G->inverse_class(c)) * Rational(G->class_size(c));
  }
  return s / Rational(G->order());
}

}  // namespace obstr
