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
#ifndef CHRISIMOS_BIT_RULES_H_
#define CHRISIMOS_BIT_RULES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chrisimos/crypto.h"

namespace chrisimos {

inline constexpr int kDefaultLambda = 256;

// A lambda-bit string. Bit positions are 1-based.
class HashDigest {
 public:
  HashDigest() = default;

  // From a string of '0'/'1' characters.
  static HashDigest FromBitString(std::string_view bits);
  // The first `lambda` bits of `hash`, most significant bit first.
  static HashDigest FromHash(const Hash256& hash, int lambda = kDefaultLambda);

  int lambda() const { return static_cast<int>(bits_.size()); }
  bool bit(int i) const { return bits_[static_cast<size_t>(i - 1)]; }
  const std::vector<bool>& bits() const { return bits_; }
  std::string ToBitString() const;

  friend bool operator==(const HashDigest&, const HashDigest&) = default;

 private:
  std::vector<bool> bits_;
};

// S = H(h_prev || h_mr) truncated to lambda bits.
HashDigest DeriveSeed(const Hash256& h_prev, const Hash256& h_mr,
                      int lambda = kDefaultLambda);

// The 2|E|-bit edge mask L. Stored as one period of a repeating pattern, so
// any bit can be read in O(1) without materialising the whole mask.
class EdgeMask {
 public:
  EdgeMask() = default;
  EdgeMask(std::vector<bool> period, uint64_t length);

  // Constant masks, used to force the all-ones / all-zeros extensions.
  static EdgeMask Constant(bool value, uint64_t length);

  uint64_t length() const { return length_; }
  const std::vector<bool>& period() const { return period_; }

  // 1-based.
  bool bit(uint64_t position) const {
    return period_[(position - 1) % period_.size()];
  }
  uint64_t CountOnes() const;
  std::vector<bool> Materialize() const;
  std::string ToBitString() const;

 private:
  std::vector<bool> period_;
  uint64_t length_ = 0;
};

// (S || ~S) repeated and truncated to out_len bits. Covers the three length
// cases (out_len <= lambda, <= 2 lambda, > 2 lambda) with one rule.
EdgeMask ExpandK(const HashDigest& seed, uint64_t out_len);
EdgeMask ExpandK(const Hash256& h1, const Hash256& h2, uint64_t out_len,
                 int lambda = kDefaultLambda);

// 1-based positions of the ones of ExpandK(seed, out_len), enumerated from
// the seed alone: {m*lambda + i : S[i] = 1, m even} and
// {z*lambda + i : S[i] = 0, z odd}, clipped to out_len. Sorted.
std::vector<uint64_t> OnesIndicesK(const HashDigest& seed, uint64_t out_len);

// Parameters of the C(n,2)-bit upper-triangular sequence that wires the
// mirror vertices W among themselves.
class WAdjacencySpec {
 public:
  // Throws Error(kChunkUnderflow) when floor(n / delta_hat) < 1.
  WAdjacencySpec(uint32_t n, uint32_t delta_hat);

  uint32_t n() const { return n_; }
  uint32_t delta_hat() const { return delta_hat_; }
  uint32_t chunk() const { return chunk_; }
  uint64_t length() const { return static_cast<uint64_t>(n_) * (n_ - 1) / 2; }

  // O(1) membership test for a 1-based position.
  bool bit(uint64_t position) const;

 private:
  uint32_t n_;
  uint32_t delta_hat_;
  uint32_t chunk_;
};

// Closed-form one positions: odd delta_hat gives (2m+1)c and (2m+1)c + 1;
// even delta_hat gives 1 + 2mc and 2(m+1)c; m = 0, 1, ... while the index
// stays within C(n,2). Sorted, 1-based.
std::vector<uint64_t> WAdjacencyOnes(const WAdjacencySpec& spec);

// Row-major upper-triangular decoding: 1 -> (1,2), ..., n-1 -> (1,n),
// n -> (2,3), ... Throws Error(kIndexOutOfRange).
std::pair<uint32_t, uint32_t> TriangularToPair(uint64_t index, uint32_t n);
uint64_t PairToTriangular(uint32_t i, uint32_t j, uint32_t n);

}  // namespace chrisimos

#endif  // CHRISIMOS_BIT_RULES_H_
