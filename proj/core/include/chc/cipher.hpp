#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "chc/chaos.hpp"
#include "chc/ecc.hpp"
#include "chc/image.hpp"

namespace chc {

// Secret key of the chaotic stage: flow parameters, initial state, step
// size, and the settle-in prefix discarded before harvesting keystreams.
struct ChaosKey {
    SystemParams params;
    State4 initial;
    double dt = 0.002;
    std::size_t n_transient = 1000;
};

ChaosKey default_chaos_key();

// Keystream material for one n-byte image, all harvested from the same n
// trajectory states: a permutation from the sort order of x, a forward
// diffusion pad from |y|+|z|+|w|, and a reverse-sweep pad from |x|.
struct KeystreamBundle {
    std::vector<std::uint32_t> permutation;
    std::vector<std::uint8_t> diffusion_bytes;
    std::vector<std::uint8_t> back_bytes;
};

// Runs simulate(key.initial, key.params, key.dt, n-1, key.n_transient) and
// quantizes.  Pad bytes are floor(v * 1e10) mod 256; the permutation is
// argsort of x with ties broken by index.  Throws InvalidParams for n == 0.
KeystreamBundle derive_keystreams(const ChaosKey& key, std::size_t n);

// out[i] = pixels[perm[i]]  /  its inverse.  LengthMismatch if sizes differ.
std::vector<std::uint8_t> confuse(std::span<const std::uint8_t> pixels,
                                  std::span<const std::uint32_t> perm);
std::vector<std::uint8_t> unconfuse(std::span<const std::uint8_t> pixels,
                                    std::span<const std::uint32_t> perm);

// Forward chained diffusion: C_i = ((P_i + C_{i-1}) mod 256) ^ ks_i ^ mask_i
// with C_{-1} = 0, and its inverse.  All spans must have equal length.
std::vector<std::uint8_t> diffuse(std::span<const std::uint8_t> pixels,
                                  std::span<const std::uint8_t> ks,
                                  std::span<const std::uint8_t> mask);
std::vector<std::uint8_t> undiffuse(std::span<const std::uint8_t> cipher,
                                    std::span<const std::uint8_t> ks,
                                    std::span<const std::uint8_t> mask);

// Reverse-direction sweep, same shape chained from the other end:
// D_i = ((C_i + D_{i+1}) mod 256) ^ ks_i ^ mask_i with D_n = 0.  Running
// both directions makes every cipher byte depend on every plaintext byte.
std::vector<std::uint8_t> diffuse_rev(std::span<const std::uint8_t> pixels,
                                      std::span<const std::uint8_t> ks,
                                      std::span<const std::uint8_t> mask);
std::vector<std::uint8_t> undiffuse_rev(std::span<const std::uint8_t> cipher,
                                        std::span<const std::uint8_t> ks,
                                        std::span<const std::uint8_t> mask);

// Self-describing ciphertext: geometry, the sender's ephemeral public
// point kG, and the cipher bytes.
struct CipherEnvelope {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 0;
    CurvePoint kG;
    std::vector<std::uint8_t> cipher_bytes;
};

inline constexpr std::array<std::uint8_t, 4> kEnvelopeMagic = {'C', 'H', 'C', '1'};
inline constexpr std::size_t kEnvelopeHeaderSize = 4 + 4 + 4 + 1 + kPointWireSize;

// Layout: magic "CHC1" | u32 LE width | u32 LE height | u8 channels |
// point (17 bytes) | cipher bytes (width*height*channels).
std::vector<std::uint8_t> write_envelope(const CipherEnvelope& env);
CipherEnvelope read_envelope(std::span<const std::uint8_t> bytes);  // MalformedEnvelope

CipherEnvelope read_envelope_file(const std::filesystem::path& path);
void write_envelope_file(const CipherEnvelope& env, const std::filesystem::path& path);

// confuse -> forward diffuse -> reverse diffuse.  The ECC mask is 2n bytes
// of one coset walk from S0 = k * P_B: first half masks the forward sweep,
// second half the reverse sweep.  Throws InvalidParams for an empty image
// or k == 0.
CipherEnvelope encrypt(const RgbImage& img, const ChaosKey& key,
                       const CurveParams& curve, const CurvePoint& G,
                       const CurvePoint& P_B, std::uint64_t k);

// Inverse pipeline; the mask walk restarts from S0 = y_priv * kG.  G is
// needed as the walk increment.
RgbImage decrypt(const CipherEnvelope& env, const ChaosKey& key,
                 std::uint64_t y_priv, const CurveParams& curve,
                 const CurvePoint& G);

}  // namespace chc
