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
#ifndef CHRISIMOS_CRYPTO_H_
#define CHRISIMOS_CRYPTO_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chrisimos {

using Hash256 = std::array<uint8_t, 32>;
using Bytes = std::vector<uint8_t>;

Hash256 Sha256(std::span<const uint8_t> data);
Hash256 Sha256(std::string_view data);
// H(a || b).
Hash256 Sha256Concat(const Hash256& a, const Hash256& b);

std::string ToHex(std::span<const uint8_t> data);
// Throws Error(kInvalidArgument) on odd length or non-hex characters.
Bytes FromHex(std::string_view hex);
Hash256 HashFromHex(std::string_view hex);

// Ed25519 (deterministic signatures) via libsodium.
using PublicKey = std::array<uint8_t, 32>;
using SecretKey = std::array<uint8_t, 64>;
using Signature = std::array<uint8_t, 64>;

struct KeyPair {
  PublicKey public_key{};
  SecretKey secret_key{};
};

KeyPair KeyPairFromSeed(const Hash256& seed);
Signature Sign(const SecretKey& sk, std::span<const uint8_t> message);
bool VerifySignature(const PublicKey& pk, std::span<const uint8_t> message,
                     const Signature& sig);

}  // namespace chrisimos

#endif  // CHRISIMOS_CRYPTO_H_
