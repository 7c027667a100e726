#pragma once

#include <map>

#include "qvla/lincomb.hpp"

namespace qvla {

// incremental reduced row echelon form; the pivot of a row is its smallest column
template <class Col>
class Echelon {
 public:
  using Vec = LinComb<Col>;

  Vec reduce(const Vec& v) const {
    Vec r = v;
    for (const auto& [c, x] : v) {
      auto it = rows_.find(c);
      if (it != rows_.end()) r.add(it->second, -x);
    }
    return r;
  }

  // returns false when v is already in the row space
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    if (r.is_zero()) return false;
    Col p = r.begin()->first;
    r = r.begin()->second.inv() * r;
    for (auto& [pc, row] : rows_) {
      Scalar x = row.coeff(p);
      if (!x.is_zero()) row.add(r, -x);
    }
    rows_.emplace(p, std::move(r));
    return true;
  }

  size_t rank() const { return rows_.size(); }
  bool is_pivot(const Col& c) const { return rows_.count(c) != 0; }
  const std::map<Col, Vec>& rows() const { return rows_; }

 private:
  std::map<Col, Vec> rows_;
};

}  // namespace qvla
