// Copyright 2026 The Chrisimos Authors
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
#include "chrisimos/bit_rules.h"

#include <algorithm>
#include <string>

#include "chrisimos/error.h"

namespace chrisimos {

HashDigest HashDigest::FromBitString(std::string_view bits) {
  HashDigest d;
  d.bits_.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kInvalidArgument,
                  "bit string may contain only 0 and 1");
    }
    d.bits_.push_back(c == '1');
  }
  if (d.bits_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty bit string");
  }
  return d;
}

HashDigest HashDigest::FromHash(const Hash256& hash, int lambda) {
  if (lambda < 1 || lambda > 256) {
    throw Error(ErrorCode::kInvalidArgument,
                "lambda must be in [1, 256], got " + std::to_string(lambda));
  }
  HashDigest d;
  d.bits_.resize(static_cast<size_t>(lambda));
  for (int i = 0; i < lambda; ++i) {
    d.bits_[static_cast<size_t>(i)] = (hash[i / 8] >> (7 - i % 8)) & 1;
  }
  return d;
}

std::string HashDigest::ToBitString() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

HashDigest DeriveSeed(const Hash256& h_prev, const Hash256& h_mr,
                      int lambda) {
  return HashDigest::FromHash(Sha256Concat(h_prev, h_mr), lambda);
}

EdgeMask::EdgeMask(std::vector<bool> period, uint64_t length)
    : period_(std::move(period)), length_(length) {
  if (period_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "edge mask period is empty");
  }
}

EdgeMask EdgeMask::Constant(bool value, uint64_t length) {
  return EdgeMask(std::vector<bool>{value}, length);
}

uint64_t EdgeMask::CountOnes() const {
  const uint64_t p = period_.size();
  const uint64_t per_period =
      static_cast<uint64_t>(std::count(period_.begin(), period_.end(), true));
  uint64_t ones = (length_ / p) * per_period;
  for (uint64_t i = 0; i < length_ % p; ++i) ones += period_[i];
  return ones;
}

std::vector<bool> EdgeMask::Materialize() const {
  std::vector<bool> out(length_);
  for (uint64_t i = 0; i < length_; ++i) out[i] = period_[i % period_.size()];
  return out;
}

std::string EdgeMask::ToBitString() const {
  std::string out;
  out.reserve(length_);
  for (uint64_t i = 1; i <= length_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

EdgeMask ExpandK(const HashDigest& seed, uint64_t out_len) {
  std::vector<bool> period = seed.bits();
  for (bool b : seed.bits()) period.push_back(!b);
  return EdgeMask(std::move(period), out_len);
}

EdgeMask ExpandK(const Hash256& h1, const Hash256& h2, uint64_t out_len,
                 int lambda) {
  return ExpandK(DeriveSeed(h1, h2, lambda), out_len);
}

std::vector<uint64_t> OnesIndicesK(const HashDigest& seed, uint64_t out_len) {
  const uint64_t lambda = static_cast<uint64_t>(seed.lambda());
  std::vector<uint64_t> out;
  out.reserve(out_len / 2 + lambda);
  for (uint64_t block = 0; block * lambda < out_len; ++block) {
    const bool complement = block % 2 == 1;
    for (uint64_t i = 1; i <= lambda; ++i) {
      const uint64_t pos = block * lambda + i;
      if (pos > out_len) break;
      if (seed.bit(static_cast<int>(i)) != complement) out.push_back(pos);
    }
  }
  return out;
}

WAdjacencySpec::WAdjacencySpec(uint32_t n, uint32_t delta_hat)
    : n_(n), delta_hat_(delta_hat), chunk_(delta_hat == 0 ? 0 : n / delta_hat) {
  if (delta_hat_ == 0 || chunk_ < 1) {
    throw Error(ErrorCode::kChunkUnderflow,
                "chunk floor(n / delta_hat) < 1 for n=" + std::to_string(n) +
                    ", delta_hat=" + std::to_string(delta_hat));
  }
}

bool WAdjacencySpec::bit(uint64_t position) const {
  if (position < 1 || position > length()) return false;
  const uint64_t c = chunk_;
  const uint64_t r = (position - 1) % (2 * c);
  if (delta_hat_ % 2 == 1) return r == c - 1 || r == c;
  return r == 0 || r == 2 * c - 1;
}

std::vector<uint64_t> WAdjacencyOnes(const WAdjacencySpec& spec) {
  const uint64_t c = spec.chunk();
  const uint64_t len = spec.length();
  const bool odd = spec.delta_hat() % 2 == 1;
  std::vector<uint64_t> out;
  for (uint64_t m = 0;; ++m) {
    const uint64_t first = odd ? (2 * m + 1) * c : 1 + 2 * m * c;
    const uint64_t second = odd ? (2 * m + 1) * c + 1 : 2 * (m + 1) * c;
    if (first > len) break;
    out.push_back(first);
    if (second <= len) out.push_back(second);
  }
  return out;
}

uint64_t PairToTriangular(uint32_t i, uint32_t j, uint32_t n) {
  if (i > j) std::swap(i, j);
  if (i < 1 || i == j || j > n) {
    throw Error(ErrorCode::kIndexOutOfRange, "pair outside the triangle");
  }
  const uint64_t row = i - 1;
  // Cells before row i: sum_{r=1}^{i-1} (n - r).
  const uint64_t before = row * n - row * (row + 1) / 2;
  return before + (j - i);
}

std::pair<uint32_t, uint32_t> TriangularToPair(uint64_t index, uint32_t n) {
  const uint64_t len = static_cast<uint64_t>(n) * (n - 1) / 2;
  if (n < 2 || index < 1 || index > len) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "triangular index " + std::to_string(index) + " outside 1.." +
                    std::to_string(len));
  }
  // Largest row i with start(i) < index, where start(i) counts cells before
  // row i.
  uint32_t lo = 1;
  uint32_t hi = n - 1;
  while (lo < hi) {
    const uint32_t mid = lo + (hi - lo + 1) / 2;
    const uint64_t row = mid - 1;
    const uint64_t start = row * n - row * (row + 1) / 2;
    if (start < index) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const uint64_t row = lo - 1;
  const uint64_t start = row * n - row * (row + 1) / 2;
  return {lo, static_cast<uint32_t>(lo + (index - start))};
}

}  // namespace chrisimos
