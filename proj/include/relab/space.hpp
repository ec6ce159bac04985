// Copyright 2026 The relab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <numeric>
#include <set>
#include <vector>

#include <relab/types.hpp>

namespace relab {

/// Direct-sum mark over a contiguous index range of one factor. A factor of
/// dimension d+1 whose last basis vector is a vacuum state carries the marks
/// {("msg", d), ("vac", 1)}.
struct Sector {
  std::string label;
  int dim = 0;

  bool operator==(const Sector&) const = default;
};

/// One labeled tensor factor. Sector marks are optional metadata over the
/// flat dimension; they never change index arithmetic.
struct Factor {
  std::string label;
  int dim = 0;
  std::vector<Sector> sectors;

  bool operator==(const Factor&) const = default;
};

/// An ordered list of labeled finite-dimensional factors. The order is fixed
/// at construction; nothing in the library reorders factors implicitly.
/// Flat indices are row major with the first factor most significant.
class Space {
 public:
  Space() = default;

  explicit Space(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::set<std::string> seen;
    for (const auto& f : factors_) {
      if (f.label.empty()) throw SchemaError("space: empty factor label");
      if (!seen.insert(f.label).second)
        throw SchemaError("space: duplicate factor label '" + f.label + "'");
      if (f.dim < 1)
        throw SchemaError("space: factor '" + f.label +
                          "' has nonpositive dimension");
      if (!f.sectors.empty()) {
        int sum = 0;
        for (const auto& s : f.sectors) {
          if (s.dim < 1)
            throw SchemaError("space: sector '" + s.label + "' of factor '" +
                              f.label + "' has nonpositive dimension");
          sum += s.dim;
        }
        if (sum != f.dim)
          throw SchemaError("space: sector marks of factor '" + f.label +
                            "' do not partition its dimension");
      }
      dim_ *= f.dim;
    }
  }

  int dim() const { return dim_; }
  int num_factors() const { return static_cast<int>(factors_.size()); }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(int i) const { return factors_.at(i); }

  const Factor& factor(const std::string& label) const {
    return factors_[index_of(label)];
  }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].label == label) return static_cast<int>(i);
    throw SchemaError("space: unknown factor label '" + label + "'");
  }

  bool has(const std::string& label) const {
    for (const auto& f : factors_)
      if (f.label == label) return true;
    return false;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.label);
    return out;
  }

  /// Per-factor digits of a flat index, most significant factor first.
  std::vector<int> digits(int flat) const {
    std::vector<int> out(factors_.size());
    for (int i = num_factors() - 1; i >= 0; --i) {
      out[i] = flat % factors_[i].dim;
      flat /= factors_[i].dim;
    }
    return out;
  }

  int flat(const std::vector<int>& digits) const {
    if (digits.size() != factors_.size())
      throw SchemaError("space: digit count does not match factor count");
    int idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (digits[i] < 0 || digits[i] >= factors_[i].dim)
        throw SchemaError("space: digit out of range");
      idx = idx * factors_[i].dim + digits[i];
    }
    return idx;
  }

  /// Sub-space made of the named factors, kept in this space's factor order
  /// regardless of the order they are listed in.
  Space keep(const std::vector<std::string>& keep_labels) const {
    std::set<std::string> wanted;
    for (const auto& l : keep_labels) {
      index_of(l);  // throws on unknown labels
      wanted.insert(l);
    }
    std::vector<Factor> kept;
    for (const auto& f : factors_)
      if (wanted.count(f.label)) kept.push_back(f);
    return Space(kept);
  }

  bool operator==(const Space& other) const {
    return factors_ == other.factors_;
  }

 private:
  std::vector<Factor> factors_;
  int dim_ = 1;
};

/// Embeds an operator acting on the named factors (with tensor slots in the
/// order given) into the full space, identity on every other factor. The
/// label list may name the factors in any order; repeated labels are
/// rejected.
inline Matrix embed_operator(const Space& sp,
                             const std::vector<std::string>& on,
                             const Matrix& op) {
  std::vector<int> slots;
  std::set<int> used;
  int sub_dim = 1;
  for (const auto& label : on) {
    int idx = sp.index_of(label);
    if (!used.insert(idx).second)
      throw SchemaError("embed: factor '" + label + "' listed twice");
    slots.push_back(idx);
    sub_dim *= sp.factor(idx).dim;
  }
  if (op.rows() != sub_dim || op.cols() != sub_dim)
    throw SchemaError("embed: operator shape does not match the named factors");

  const int n = sp.dim();
  Matrix out = Matrix::Zero(n, n);
  auto sub_index = [&](const std::vector<int>& d) {
    int s = 0;
    for (int slot : slots) s = s * sp.factor(slot).dim + d[slot];
    return s;
  };
  for (int i = 0; i < n; ++i) {
    const std::vector<int> di = sp.digits(i);
    for (int j = 0; j < n; ++j) {
      const std::vector<int> dj = sp.digits(j);
      bool rest_equal = true;
      for (int f = 0; f < sp.num_factors(); ++f) {
        if (used.count(f)) continue;
        if (di[f] != dj[f]) {
          rest_equal = false;
          break;
        }
      }
      if (rest_equal) out(i, j) = op(sub_index(di), sub_index(dj));
    }
  }
  return out;
}

}  // namespace relab
