#pragma once

#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proalg/paren.hpp"

namespace proalg {

// ZERO, or a parenthesized sequence of irreducible labels.
template <class Label>
class ClosureObject {
 public:
  ClosureObject() = default;  // ZERO
  explicit ClosureObject(Paren<Label> tree) : tree_(std::move(tree)) {}
  static ClosureObject zero() { return ClosureObject(); }
  static ClosureObject leaf(Label l) { return ClosureObject(Paren<Label>::leaf(std::move(l))); }

  bool is_zero() const { return !tree_.has_value(); }
  const Paren<Label>& tree() const {
    if (!tree_) throw std::invalid_argument("the zero object has no shape");
    return *tree_;
  }
  std::vector<Label> labels() const { return tree_ ? tree_->leaves() : std::vector<Label>{}; }

  friend bool operator==(const ClosureObject& a, const ClosureObject& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return *a.tree_ == *b.tree_;
  }

 private:
  std::optional<Paren<Label>> tree_;
};

template <class Label>
ClosureObject<Label> closure_tensor(const ClosureObject<Label>& x, const ClosureObject<Label>& y) {
  if (x.is_zero() || y.is_zero()) return ClosureObject<Label>::zero();
  return ClosureObject<Label>(concat(x.tree(), y.tree()));
}

template <class Label>
bool is_tensor_irreducible(const ClosureObject<Label>& x) {
  return !x.is_zero() && x.tree().is_leaf();
}

template <class Label>
std::size_t tensor_length(const ClosureObject<Label>& x) {
  if (x.is_zero()) throw std::invalid_argument("the zero object has no tensor length");
  return x.tree().leaf_count();
}

// Inverse of closure_tensor on non-irreducible objects.
template <class Label>
std::pair<ClosureObject<Label>, ClosureObject<Label>> tensor_split(const ClosureObject<Label>& x) {
  if (x.is_zero() || x.tree().is_leaf()) throw std::invalid_argument("object is not a tensor product");
  return {ClosureObject<Label>(x.tree().left()), ClosureObject<Label>(x.tree().right())};
}

// Irreducible factors in order; closure of the shape with these labels gives x back.
template <class Label>
std::vector<ClosureObject<Label>> tensor_factors(const ClosureObject<Label>& x) {
  if (x.is_zero()) throw std::invalid_argument("the zero object is not a tensor product of irreducibles");
  std::vector<ClosureObject<Label>> out;
  for (auto& l : x.labels()) out.push_back(ClosureObject<Label>::leaf(l));
  return out;
}

// The ambient category: hom spaces, tensor of morphisms, composition, and the
// associativity constraint between closure objects.
template <class P>
concept SkeletonProvider = requires(const P& p, const ClosureObject<typename P::label_type>& x,
                                    const typename P::morphism_type& f) {
  typename P::label_type;
  typename P::morphism_type;
  { p.hom_basis(x, x) } -> std::same_as<std::vector<typename P::morphism_type>>;
  { p.identity(x) } -> std::same_as<typename P::morphism_type>;
  { p.tensor(f, f) } -> std::same_as<typename P::morphism_type>;
  { p.compose(f, f) } -> std::same_as<typename P::morphism_type>;
  { p.associator(x, x, x) } -> std::same_as<typename P::morphism_type>;
  { p.equal(f, f) } -> std::same_as<bool>;
};

// Associativity constraint on the closure, taken from the provider.
template <SkeletonProvider P>
typename P::morphism_type closure_associator(const P& p, const ClosureObject<typename P::label_type>& x,
                                             const ClosureObject<typename P::label_type>& y,
                                             const ClosureObject<typename P::label_type>& z) {
  return p.associator(x, y, z);
}

// (w x) y) z -> w (x (y z)) both ways round the pentagon.
template <SkeletonProvider P>
bool pentagon_holds(const P& p, const ClosureObject<typename P::label_type>& w,
                    const ClosureObject<typename P::label_type>& x, const ClosureObject<typename P::label_type>& y,
                    const ClosureObject<typename P::label_type>& z) {
  auto t = [](auto& a, auto& b) { return closure_tensor(a, b); };
  auto lhs = p.compose(closure_associator(p, w, x, t(y, z)), closure_associator(p, t(w, x), y, z));
  auto rhs = p.compose(p.tensor(p.identity(w), closure_associator(p, x, y, z)),
                       p.compose(closure_associator(p, w, t(x, y), z),
                                 p.tensor(closure_associator(p, w, x, y), p.identity(z))));
  return p.equal(lhs, rhs);
}

}  // namespace proalg
