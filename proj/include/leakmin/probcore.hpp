// Copyright 2026 The leakmin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#ifndef LEAKMIN_PROBCORE_HPP_
#define LEAKMIN_PROBCORE_HPP_

// Probability vectors, channels and Bayes posteriors.
//
// Index convention: inputs and outputs are 0-based everywhere in the C++
// API. The JSON formats in io.hpp use 1-based input labels to match the
// usual mathematical notation.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "leakmin/errors.hpp"

namespace leakmin {

// Input distribution, kept sorted non-increasingly. permutation()[i] is the
// original label of the i'th largest probability. Ties keep original order.
class Prior {
 public:
  explicit Prior(std::span<const double> probs)
      : Prior(probs, identity_labels(probs.size()), probs.size()) {}
  explicit Prior(std::initializer_list<double> probs)
      : Prior(std::span<const double>(probs.begin(), probs.size())) {}
  explicit Prior(const std::vector<double>& probs)
      : Prior(std::span<const double>(probs)) {}

  // Drops zero entries (they never change any expansible entropy) and keeps
  // the original labels of the survivors.
  static Prior strip_zeros(std::span<const double> probs) {
    std::vector<double> kept;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] < 0.0) {
        throw ValidationError("prior entry " + std::to_string(i) +
                              " is negative");
      }
      if (probs[i] > 0.0) {
        kept.push_back(probs[i]);
        labels.push_back(i);
      }
    }
    return Prior(kept, std::move(labels), probs.size());
  }

  static Prior uniform(std::size_t n) {
    if (n == 0) throw ValidationError("uniform prior needs n >= 1");
    return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  // p(i) proportional to n+1-i, i = 1..n. n = 30 gives (30/465, ..., 1/465).
  static Prior linear_decay(std::size_t n) {
    if (n == 0) throw ValidationError("linear_decay prior needs n >= 1");
    const double total = static_cast<double>(n * (n + 1) / 2);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = static_cast<double>(n - i) / total;
    }
    return Prior(p);
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> sorted() const { return probs_; }
  const std::vector<std::size_t>& permutation() const { return labels_; }
  std::size_t original_size() const { return original_size_; }

  // Probabilities in original label order (zeros restored if stripped).
  std::vector<double> original() const {
    std::vector<double> out(original_size_, 0.0);
    for (std::size_t i = 0; i < probs_.size(); ++i) out[labels_[i]] = probs_[i];
    return out;
  }

  // Sum of p(from), ..., p(n-1) in sorted order.
  double tail_sum(std::size_t from) const {
    double s = 0.0;
    for (std::size_t i = from; i < probs_.size(); ++i) s += probs_[i];
    return s;
  }

 private:
  Prior(std::span<const double> probs, std::vector<std::size_t> labels,
        std::size_t original_size)
      : original_size_(original_size) {
    if (probs.empty()) throw ValidationError("prior is empty");
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double v = probs[i];
      if (!std::isfinite(v) || v <= 0.0 || v > 1.0) {
        std::ostringstream os;
        os << "prior entry " << labels[i] << " = " << v
           << " is not in (0, 1]";
        throw ValidationError(os.str());
      }
      total += v;
    }
    if (std::abs(total - 1.0) > tol::kStructural) {
      std::ostringstream os;
      os.precision(17);
      os << "prior sums to " << total << ", expected 1";
      throw ValidationError(os.str());
    }
    std::vector<std::size_t> order(probs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return probs[a] > probs[b];
                     });
    probs_.reserve(order.size());
    labels_.reserve(order.size());
    for (std::size_t i : order) {
      probs_.push_back(probs[i]);
      labels_.push_back(labels[i]);
    }
  }

  static std::vector<std::size_t> identity_labels(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
  }

  std::vector<double> probs_;
  std::vector<std::size_t> labels_;
  std::size_t original_size_ = 0;
};

// A set of input indices, stored sorted and deduplicated.
class SubsetLabel {
 public:
  SubsetLabel() = default;
  explicit SubsetLabel(std::vector<std::size_t> members)
      : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }
  SubsetLabel(std::initializer_list<std::size_t> members)
      : SubsetLabel(std::vector<std::size_t>(members)) {}

  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
  }
  bool subset_of(const SubsetLabel& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  // "1,2,3" style, 1-based.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(members_[i] + 1);
    }
    return s;
  }

  auto operator<=>(const SubsetLabel&) const = default;
  bool operator==(const SubsetLabel&) const = default;

 private:
  std::vector<std::size_t> members_;
};

// Row-stochastic transition matrix p(y|x) with one declared input subset per
// output column. The constructor checks structure only; use validate_channel
// for the stochastic and pre-image constraints.
class Channel {
 public:
  Channel() = default;
  Channel(std::size_t n, std::size_t m, std::vector<double> data,
          std::vector<SubsetLabel> outputs)
      : n_(n), m_(m), data_(std::move(data)), outputs_(std::move(outputs)) {
    if (n_ == 0) throw ValidationError("channel needs at least one input");
    if (data_.size() != n_ * m_) {
      throw ValidationError("channel data has " + std::to_string(data_.size()) +
                            " entries, expected " + std::to_string(n_ * m_));
    }
    if (outputs_.size() != m_) {
      throw ValidationError("channel has " + std::to_string(m_) +
                            " columns but " + std::to_string(outputs_.size()) +
                            " output labels");
    }
    for (const auto& label : outputs_) {
      if (label.empty()) throw ValidationError("output label is empty");
      if (label.members().back() >= n_) {
        throw ValidationError("output label {" + label.to_string() +
                              "} exceeds input count " + std::to_string(n_));
      }
    }
  }

  // Labels default to each column's support; an all-zero column gets the full
  // input set.
  static Channel from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ValidationError("channel has no rows");
    const std::size_t n = rows.size();
    const std::size_t m = rows.front().size();
    std::vector<double> data;
    data.reserve(n * m);
    for (const auto& r : rows) {
      if (r.size() != m) throw ValidationError("ragged channel rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    std::vector<SubsetLabel> labels;
    labels.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < n; ++i) {
        if (data[i * m + j] != 0.0) support.push_back(i);
      }
      if (support.empty()) {
        support.resize(n);
        std::iota(support.begin(), support.end(), std::size_t{0});
      }
      labels.emplace_back(std::move(support));
    }
    return Channel(n, m, std::move(data), std::move(labels));
  }

  static Channel from_rows(const std::vector<std::vector<double>>& rows,
                           std::vector<SubsetLabel> outputs) {
    if (rows.empty()) throw ValidationError("channel has no rows");
    const std::size_t m = rows.front().size();
    std::vector<double> data;
    for (const auto& r : rows) {
      if (r.size() != m) throw ValidationError("ragged channel rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    return Channel(rows.size(), m, std::move(data), std::move(outputs));
  }

  // Every input maps to a single shared output.
  static Channel constant(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Channel(n, 1, std::vector<double>(n, 1.0), {SubsetLabel(all)});
  }

  static Channel identity(std::size_t n) {
    std::vector<double> data(n * n, 0.0);
    std::vector<SubsetLabel> labels;
    for (std::size_t i = 0; i < n; ++i) {
      data[i * n + i] = 1.0;
      labels.push_back(SubsetLabel{i});
    }
    return Channel(n, n, std::move(data), std::move(labels));
  }

  std::size_t inputs() const { return n_; }
  std::size_t outputs() const { return m_; }
  double operator()(std::size_t x, std::size_t y) const {
    return data_[x * m_ + y];
  }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(data_).subspan(x * m_, m_);
  }
  const SubsetLabel& label(std::size_t y) const { return outputs_[y]; }
  const std::vector<SubsetLabel>& labels() const { return outputs_; }
  const std::vector<double>& data() const { return data_; }

  // Reorders the input rows: row i of the result is row perm^-1(i) here, i.e.
  // row x of this channel becomes row perm[x].
  Channel relabel_inputs(std::span<const std::size_t> perm,
                         std::size_t new_n) const {
    if (perm.size() != n_) throw ValidationError("permutation size mismatch");
    std::vector<double> data(new_n * m_, 0.0);
    for (std::size_t x = 0; x < n_; ++x) {
      if (perm[x] >= new_n) throw ValidationError("permutation out of range");
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(x * m_), m_,
                  data.begin() + static_cast<std::ptrdiff_t>(perm[x] * m_));
    }
    std::vector<SubsetLabel> labels;
    labels.reserve(m_);
    for (const auto& l : outputs_) {
      std::vector<std::size_t> mapped;
      for (std::size_t x : l.members()) mapped.push_back(perm[x]);
      labels.emplace_back(std::move(mapped));
    }
    return Channel(new_n, m_, std::move(data), std::move(labels));
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<double> data_;
  std::vector<SubsetLabel> outputs_;
};

struct ChannelCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
  explicit operator bool() const { return ok; }
};

// Checks p(y|x) >= 0, rows summing to 1 within row_tol, each column's support
// inside its declared label, and every support of size at most k.
inline ChannelCheck validate_channel(const Channel& ch, std::size_t k,
                                     double row_tol = tol::kStructural) {
  if (ch.inputs() == 0 || ch.data().size() != ch.inputs() * ch.outputs()) {
    throw ValidationError("channel dimensions are inconsistent");
  }
  if (k == 0) throw ValidationError("pre-image cap k must be positive");
  ChannelCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.diagnostics.push_back(std::move(msg));
  };
  for (std::size_t x = 0; x < ch.inputs(); ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < ch.outputs(); ++y) {
      const double v = ch(x, y);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "entry (" << x << ", " << y << ") = " << v << " is negative";
        fail(os.str());
      }
      sum += v;
    }
    if (!(std::abs(sum - 1.0) <= row_tol)) {
      std::ostringstream os;
      os.precision(17);
      os << "row " << x << " sums to " << sum;
      fail(os.str());
    }
  }
  for (std::size_t y = 0; y < ch.outputs(); ++y) {
    std::size_t support = 0;
    for (std::size_t x = 0; x < ch.inputs(); ++x) {
      if (ch(x, y) > 0.0) {
        ++support;
        if (!ch.label(y).contains(x)) {
          fail("column " + std::to_string(y) + " is nonzero at input " +
               std::to_string(x) + " outside its label {" +
               ch.label(y).to_string() + "}");
        }
      }
    }
    if (support > k) {
      fail("column " + std::to_string(y) + " has pre-image size " +
           std::to_string(support) + " > k = " + std::to_string(k));
    }
  }
  return check;
}

// Rows with strictly positive mass in column y; nullopt for an unused output.
inline std::optional<SubsetLabel> preimage(const Channel& ch, std::size_t y) {
  if (y >= ch.outputs()) {
    throw ValidationError("output index " + std::to_string(y) +
                          " out of range");
  }
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < ch.inputs(); ++x) {
    if (ch(x, y) > 0.0) members.push_back(x);
  }
  if (members.empty()) return std::nullopt;
  return SubsetLabel(std::move(members));
}

// Posterior p_{X|y} restricted to its support, for one realized output.
struct OutputPosterior {
  std::size_t output = 0;
  double mass = 0.0;                  // p(y)
  std::vector<std::size_t> support;   // inputs with p(x|y) > 0
  std::vector<double> posterior;      // p(x|y) for x in support
};

// Only outputs with p(y) > 0 appear.
struct PosteriorTable {
  std::size_t inputs = 0;
  std::vector<OutputPosterior> outputs;

  // Sum_y p(y) p_{X|y}, which must give back the prior.
  std::vector<double> marginal() const {
    std::vector<double> p(inputs, 0.0);
    for (const auto& o : outputs) {
      for (std::size_t i = 0; i < o.support.size(); ++i) {
        p[o.support[i]] += o.mass * o.posterior[i];
      }
    }
    return p;
  }

  // Posterior of one output padded back to full length.
  std::vector<double> dense(std::size_t idx) const {
    std::vector<double> v(inputs, 0.0);
    const auto& o = outputs[idx];
    for (std::size_t i = 0; i < o.support.size(); ++i) {
      v[o.support[i]] = o.posterior[i];
    }
    return v;
  }
};

// Bayes posteriors; p is aligned with the channel rows.
inline PosteriorTable posteriors(std::span<const double> p, const Channel& ch) {
  if (p.size() != ch.inputs()) {
    throw ValidationError("prior has " + std::to_string(p.size()) +
                          " entries but channel has " +
                          std::to_string(ch.inputs()) + " inputs");
  }
  PosteriorTable table;
  table.inputs = ch.inputs();
  for (std::size_t y = 0; y < ch.outputs(); ++y) {
    OutputPosterior out;
    out.output = y;
    for (std::size_t x = 0; x < ch.inputs(); ++x) {
      const double joint = p[x] * ch(x, y);
      if (joint > 0.0) {
        out.support.push_back(x);
        out.posterior.push_back(joint);
        out.mass += joint;
      }
    }
    if (out.mass <= 0.0) continue;
    for (double& v : out.posterior) v /= out.mass;
    table.outputs.push_back(std::move(out));
  }
  return table;
}

// Channel rows are taken to be in the prior's sorted order.
inline PosteriorTable posteriors(const Prior& p, const Channel& ch) {
  return posteriors(p.sorted(), ch);
}

// X -> Y -> Z: the (n x r) product of an (n x m) and an (m x r) channel.
inline Channel compose(const Channel& first, const Channel& second) {
  if (first.outputs() != second.inputs()) {
    throw ValidationError("cannot compose: inner dimensions differ");
  }
  const std::size_t n = first.inputs();
  const std::size_t m = first.outputs();
  const std::size_t r = second.outputs();
  std::vector<std::vector<double>> rows(n, std::vector<double>(r, 0.0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      const double a = first(x, y);
      if (a == 0.0) continue;
      for (std::size_t z = 0; z < r; ++z) rows[x][z] += a * second(y, z);
    }
  }
  return Channel::from_rows(rows);
}

}  // namespace leakmin

#endif  // LEAKMIN_PROBCORE_HPP_
