#pragma once

#include <map>
#include <string>

#include "qvla/scalars.hpp"

namespace qvla {

// finite Scalar-combination over an ordered key type, zeros never stored
template <class K>
class LinComb {
 public:
  using Map = std::map<K, Scalar>;

  LinComb() = default;
  LinComb(const K& k, const Scalar& c = Scalar(1)) { add(k, c); }  // NOLINT

  void add(const K& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = m_.find(k);
    if (it == m_.end()) {
      m_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) m_.erase(it);
  }
  void add(const LinComb& o, const Scalar& c = Scalar(1)) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : o.m_) add(k, c.is_one() ? v : v * c);
  }

  Scalar coeff(const K& k) const {
    auto it = m_.find(k);
    return it == m_.end() ? Scalar() : it->second;
  }

  bool is_zero() const { return m_.empty(); }
  size_t size() const { return m_.size(); }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }
  const Map& terms() const { return m_; }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, Scalar(-1));
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& c, const LinComb& a) {
    LinComb r;
    r.add(a, c);
    return r;
  }
  LinComb operator-() const { return Scalar(-1) * *this; }

  friend bool operator==(const LinComb& a, const LinComb& b) {
    if (a.m_.size() != b.m_.size()) return false;
    auto i = a.m_.begin();
    for (auto j = b.m_.begin(); j != b.m_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

  template <class F>
  std::string str(F key_str) const {
    if (m_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : m_) {
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-' && c.den().empty() && c.num().size() == 1;
      if (neg) cs = cs.substr(1);
      std::string body;
      if (cs == "1") body = key_str(k);
      else if (c.num().size() > 1 && c.den().empty()) body = "(" + cs + ")*" + key_str(k);
      else body = cs + "*" + key_str(k);
      if (first) s += neg ? "-" + body : body;
      else s += (neg ? " - " : " + ") + body;
      first = false;
    }
    return s;
  }

 private:
  Map m_;
};

}  // namespace qvla
