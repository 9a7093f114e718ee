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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chrisimos/crypto.h"
#include "chrisimos/error.h"
#include "chrisimos/random.h"
#include "oracles.h"

namespace chrisimos {
namespace {

std::string RandomBits(Rng& rng, int len) {
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(rng.Bernoulli(0.5) ? '1' : '0');
  return s;
}

TEST(HashDigest, FromHashTakesLeadingBitsMsbFirst) {
  Hash256 h{};
  h[0] = 0xa5;  // 1010 0101
  h[1] = 0x80;
  const HashDigest d = HashDigest::FromHash(h, 10);
  EXPECT_EQ(d.ToBitString(), "1010010110");
  EXPECT_EQ(HashDigest::FromHash(h).lambda(), 256);
  EXPECT_THROW(HashDigest::FromHash(h, 0), Error);
  EXPECT_THROW(HashDigest::FromHash(h, 257), Error);
}

TEST(HashDigest, DeriveSeedHashesTheConcatenation) {
  Hash256 a{}, b{};
  a[0] = 1;
  b[31] = 2;
  EXPECT_EQ(DeriveSeed(a, b, 256), HashDigest::FromHash(Sha256Concat(a, b)));
  EXPECT_NE(DeriveSeed(a, b), DeriveSeed(b, a));
}

TEST(ExpandK, WorkedExample) {
  const HashDigest s = HashDigest::FromBitString("0101010110");
  const EdgeMask mask = ExpandK(s, 200);
  EXPECT_EQ(mask.CountOnes(), 100u);
  const auto ones = OnesIndicesK(s, 200);
  ASSERT_EQ(ones.size(), 100u);
  for (uint64_t p = 2; p <= 182; p += 20) {
    EXPECT_TRUE(std::binary_search(ones.begin(), ones.end(), p)) << p;
  }
  for (uint64_t p = 11; p <= 191; p += 20) {
    EXPECT_TRUE(std::binary_search(ones.begin(), ones.end(), p)) << p;
  }
  EXPECT_EQ(ones, oracle::OnePositions(oracle::Expand("0101010110", 200)));
}

TEST(ExpandK, TruncationIdentityAndShortOutputs) {
  const HashDigest s = HashDigest::FromBitString("1100");
  EXPECT_EQ(ExpandK(s, 4).ToBitString(), "1100");
  EXPECT_EQ(ExpandK(s, 10).ToBitString(), "1100001111");
  EXPECT_EQ(ExpandK(s, 3).ToBitString(), "110");
  EXPECT_EQ(OnesIndicesK(s, 10), (std::vector<uint64_t>{1, 2, 7, 8, 9, 10}));
  const HashDigest ones = HashDigest::FromBitString("1111111111");
  EXPECT_EQ(OnesIndicesK(ones, 20),
            (std::vector<uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
}

TEST(ExpandK, OnesIndicesMatchScanAndBalance) {
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const int lambda = 1 + static_cast<int>(rng.Below(40));
    const std::string s = RandomBits(rng, lambda);
    const uint64_t len = 1 + rng.Below(4 * lambda + 7);
    const HashDigest seed = HashDigest::FromBitString(s);
    const EdgeMask mask = ExpandK(seed, len);
    const std::string expected = oracle::Expand(s, len);
    ASSERT_EQ(mask.ToBitString(), expected);
    ASSERT_EQ(OnesIndicesK(seed, len), oracle::OnePositions(expected));
    const double imbalance =
        std::abs(static_cast<double>(mask.CountOnes()) - len / 2.0);
    ASSERT_LE(imbalance, lambda / 2.0 + (len % (2 * lambda)) / 2.0);
    ASSERT_LE(imbalance, lambda);
  }
}

TEST(ExpandK, FromHashes) {
  Hash256 a{}, b{};
  a[3] = 7;
  const EdgeMask m = ExpandK(a, b, 600, 256);
  EXPECT_EQ(m.length(), 600u);
  EXPECT_EQ(m.ToBitString(),
            oracle::Expand(DeriveSeed(a, b).ToBitString(), 600));
}

TEST(WAdjacency, Examples) {
  EXPECT_EQ(WAdjacencyOnes(WAdjacencySpec(6, 2)),
            (std::vector<uint64_t>{1, 6, 7, 12, 13}));
  EXPECT_EQ(WAdjacencyOnes(WAdjacencySpec(9, 3)),
            (std::vector<uint64_t>{3, 4, 9, 10, 15, 16, 21, 22, 27, 28, 33, 34}));
  try {
    WAdjacencySpec(4, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChunkUnderflow);
  }
}

TEST(WAdjacency, FormulaMatchesChunkSequence) {
  for (uint32_t n = 2; n <= 70; ++n) {
    for (uint32_t dh = 1; dh <= n; ++dh) {
      const WAdjacencySpec spec(n, dh);
      const std::string seq = oracle::WSequence(n, dh);
      ASSERT_EQ(WAdjacencyOnes(spec), oracle::OnePositions(seq)) << n << " " << dh;
      for (uint64_t p = 1; p <= spec.length(); ++p) {
        ASSERT_EQ(spec.bit(p), seq[p - 1] == '1');
      }
    }
  }
}

TEST(WAdjacency, LowerBoundOnOnes) {
  for (uint32_t n = 4; n <= 64; ++n) {
    for (uint32_t d = 1; d <= n / 4; ++d) {
      const uint32_t dh = 2 * d;
      const uint64_t ones = WAdjacencyOnes(WAdjacencySpec(n, dh)).size();
      const int64_t floor_half = static_cast<int64_t>(dh) * (n - 1) / 2;
      EXPECT_GE(static_cast<int64_t>(ones), floor_half - dh) << n << " " << d;
      const uint64_t cells = static_cast<uint64_t>(n) * (n - 1) / 2;
      const auto need = static_cast<int64_t>(
          std::ceil(static_cast<double>(d) / n * static_cast<double>(cells)));
      EXPECT_GE(static_cast<int64_t>(ones), need - dh) << n << " " << d;
    }
  }
}

TEST(Triangular, Decoding) {
  EXPECT_EQ(TriangularToPair(1, 6), std::make_pair(1u, 2u));
  EXPECT_EQ(TriangularToPair(6, 6), std::make_pair(2u, 3u));
  EXPECT_EQ(TriangularToPair(15, 6), std::make_pair(5u, 6u));
  EXPECT_THROW(TriangularToPair(0, 6), Error);
  EXPECT_THROW(TriangularToPair(16, 6), Error);
  for (uint32_t n : {2u, 3u, 7u, 50u}) {
    const auto cells = oracle::TriangleCells(n);
    for (uint64_t k = 0; k < cells.size(); ++k) {
      ASSERT_EQ(TriangularToPair(k + 1, n), cells[k]);
      ASSERT_EQ(PairToTriangular(cells[k].first, cells[k].second, n), k + 1);
    }
  }
}

}  // namespace
}  // namespace chrisimos
