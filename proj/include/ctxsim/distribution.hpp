#pragma once

#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "ctxsim/semifield.hpp"

namespace ctxsim {

// Finite-support normalized distribution over keys K with weights in one of
// the semifield instances. Zero weights are pruned eagerly, so the stored map
// is exactly the support; equality of distributions is structural equality.
template <class K>
class Dist {
 public:
  Dist(Semifield tag, std::map<K, Value> weights) : tag_(tag) {
    Value total = Value::zero(tag);
    for (auto& [key, value] : weights) {
      if (value.tag() != tag)
        fail(Errc::instance_mismatch, "distribution weight tagged " +
                                          std::string(semifield_name(value.tag())) + " in a " +
                                          semifield_name(tag) + " distribution");
      if (value.is_zero()) continue;
      total = total + value;
      support_.emplace(key, std::move(value));
    }
    if (!total.is_one())
      fail(Errc::not_normalized, "weights sum to " + total.to_string() + ", expected 1");
  }

  static Dist unit(Semifield tag, K x) {
    std::map<K, Value> w;
    w.emplace(std::move(x), Value::one(tag));
    return Dist(tag, std::move(w));
  }

  Semifield tag() const { return tag_; }
  const std::map<K, Value>& weights() const { return support_; }
  std::size_t size() const { return support_.size(); }

  Value at(const K& key) const {
    auto it = support_.find(key);
    return it == support_.end() ? Value::zero(tag_) : it->second;
  }

  bool contains(const K& key) const { return support_.count(key) != 0; }

  // D_R(f): image distribution, fibre weights summed.
  template <class F>
  auto map(F&& f) const -> Dist<std::decay_t<decltype(f(std::declval<const K&>()))>> {
    using K2 = std::decay_t<decltype(f(std::declval<const K&>()))>;
    std::map<K2, Value> out;
    for (const auto& [key, value] : support_) {
      K2 image = f(key);
      auto [it, fresh] = out.emplace(std::move(image), value);
      if (!fresh) it->second = it->second + value;
    }
    return Dist<K2>(tag_, std::move(out));
  }

  // Kleisli extension: result(y) = sum_x w(x) * k(x)(y).
  template <class F>
  auto bind(F&& k) const
      -> std::decay_t<decltype(k(std::declval<const K&>()))> {
    using DOut = std::decay_t<decltype(k(std::declval<const K&>()))>;
    using K2 = typename DOut::key_type;
    std::map<K2, Value> out;
    for (const auto& [key, value] : support_) {
      const DOut inner = k(key);
      if (inner.tag() != tag_) fail(Errc::instance_mismatch, "bind across semifields");
      for (const auto& [key2, value2] : inner.weights()) {
        Value term = value * value2;
        auto [it, fresh] = out.emplace(key2, term);
        if (!fresh) it->second = it->second + term;
      }
    }
    return DOut(tag_, std::move(out));
  }

  bool operator==(const Dist& rhs) const { return tag_ == rhs.tag_ && support_ == rhs.support_; }
  bool operator!=(const Dist& rhs) const { return !(*this == rhs); }

  using key_type = K;

 private:
  Semifield tag_;
  std::map<K, Value> support_;
};

template <class K>
Dist<K> dist_unit(Semifield tag, K x) {
  return Dist<K>::unit(tag, std::move(x));
}

// (e ⊗ d)(x, y) = e(x) d(y)
template <class A, class B>
Dist<std::pair<A, B>> dist_product(const Dist<A>& e, const Dist<B>& d) {
  if (e.tag() != d.tag()) fail(Errc::instance_mismatch, "product across semifields");
  std::map<std::pair<A, B>, Value> out;
  for (const auto& [x, wx] : e.weights())
    for (const auto& [y, wy] : d.weights()) out.emplace(std::make_pair(x, y), wx * wy);
  return Dist<std::pair<A, B>>(e.tag(), std::move(out));
}

// Product followed by a key merge; merge must be injective on supp x supp.
template <class A, class B, class M>
auto dist_product_merge(const Dist<A>& e, const Dist<B>& d, M&& merge)
    -> Dist<std::decay_t<decltype(merge(std::declval<const A&>(), std::declval<const B&>()))>> {
  using K2 = std::decay_t<decltype(merge(std::declval<const A&>(), std::declval<const B&>()))>;
  if (e.tag() != d.tag()) fail(Errc::instance_mismatch, "product across semifields");
  std::map<K2, Value> out;
  for (const auto& [x, wx] : e.weights())
    for (const auto& [y, wy] : d.weights()) {
      auto [it, fresh] = out.emplace(merge(x, y), wx * wy);
      if (!fresh) fail(Errc::internal_error, "non-injective merge in product");
    }
  return Dist<K2>(e.tag(), std::move(out));
}

// e(- | y0): conditional on the second coordinate. The identity
// e(x, y) = e(x | y) e(y) holds by construction.
template <class A, class B>
Dist<A> dist_conditional(const Dist<std::pair<A, B>>& e, const B& y0) {
  Value mass = Value::zero(e.tag());
  for (const auto& [key, value] : e.weights())
    if (key.second == y0) mass = mass + value;
  if (mass.is_zero()) fail(Errc::conditioning_on_null, "conditioning on a weight-0 point");
  Value scale = mass.inverse();
  std::map<A, Value> out;
  for (const auto& [key, value] : e.weights())
    if (key.second == y0) out.emplace(key.first, value * scale);
  return Dist<A>(e.tag(), std::move(out));
}

// Pointwise convex mixture; weights must sum to 1.
template <class K>
Dist<K> dist_convex(Semifield tag, const std::vector<std::pair<Value, Dist<K>>>& terms) {
  Value total = Value::zero(tag);
  std::map<K, Value> out;
  for (const auto& [weight, dist] : terms) {
    if (weight.tag() != tag || dist.tag() != tag)
      fail(Errc::instance_mismatch, "mixture across semifields");
    total = total + weight;
    if (weight.is_zero()) continue;
    for (const auto& [key, value] : dist.weights()) {
      Value term = weight * value;
      auto [it, fresh] = out.emplace(key, term);
      if (!fresh) it->second = it->second + term;
    }
  }
  if (!total.is_one())
    fail(Errc::weights_not_normalized, "mixture weights sum to " + total.to_string());
  return Dist<K>(tag, std::move(out));
}

}  // namespace ctxsim
