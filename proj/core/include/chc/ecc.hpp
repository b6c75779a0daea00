#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace chc {

// Short Weierstrass curve y^2 = x^3 + a x + b over F_p, p an odd prime
// >= 5 and nonsingular (4a^3 + 27b^2 != 0 mod p).  Coordinates are u64;
// products run through unsigned __int128, so any 64-bit prime works.
struct CurveParams {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t p = 0;
};

struct CurvePoint {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    bool infinity = true;

    static CurvePoint make_infinity() { return CurvePoint{}; }
    static CurvePoint affine(std::uint64_t x, std::uint64_t y) {
        return CurvePoint{x, y, false};
    }
    bool operator==(const CurvePoint&) const = default;
};

struct KeyPair {
    std::uint64_t private_scalar = 0;
    CurvePoint public_point;
};

// ElGamal ciphertext: c1 = kG, c2 = M + k * P_B.
struct PointCipher {
    CurvePoint c1;
    CurvePoint c2;
};

// Everything the ECC side of the cipher needs in one bag: curve, base
// point, receiver key pair, sender ephemeral scalar.
struct EccKeyMaterial {
    CurveParams curve;
    CurvePoint G;
    std::uint64_t private_scalar = 0;  // receiver secret y
    std::uint64_t ephemeral_k = 0;     // sender per-message scalar k
    CurvePoint public_point;           // P_B = y * G
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Normalizes a, b mod p and checks the curve is usable.
// Throws NotPrime / SingularCurve / InvalidParams (p < 5).
CurveParams validate_curve(std::uint64_t a, std::uint64_t b, std::uint64_t p);

bool is_on_curve(const CurvePoint& pt, const CurveParams& c);

// -(x, y) = (x, p - y); the identity is its own negative.
CurvePoint point_negate(const CurvePoint& pt, const CurveParams& c);

// Chord-and-tangent group law.  Inputs must lie on the curve.
CurvePoint point_add(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c);
CurvePoint point_double(const CurvePoint& P, const CurveParams& c);

// Left-to-right double-and-add; n = 0 gives the identity.
CurvePoint scalar_mul(std::uint64_t n, const CurvePoint& P, const CurveParams& c);

KeyPair make_keypair(std::uint64_t private_scalar, const CurvePoint& G,
                     const CurveParams& c);

PointCipher elgamal_encrypt(const CurvePoint& message, std::uint64_t k,
                            const CurvePoint& public_key, const CurvePoint& G,
                            const CurveParams& c);
CurvePoint elgamal_decrypt(const PointCipher& ct, std::uint64_t private_scalar,
                           const CurveParams& c);

// Byte mask from the coset walk S0, S0+G, S0+2G, ...: byte i is
// X(S_i) mod 256.  When the walk hits the identity that byte is 0 and the
// walk restarts from G, so the stream is defined for every length.
std::vector<std::uint8_t> ecc_mask_stream(const CurvePoint& S0, const CurvePoint& G,
                                          const CurveParams& c, std::size_t n_bytes);

// Wire form: flag byte (0 identity, 1 affine) then x, y as u64 LE.
inline constexpr std::size_t kPointWireSize = 17;
std::array<std::uint8_t, kPointWireSize> serialize_point(const CurvePoint& pt);
// Reads kPointWireSize bytes; throws MalformedEnvelope on a bad flag.
CurvePoint deserialize_point(const std::uint8_t* bytes);

// Reference key material: p=123457, a=5376, b=2438, G=(2225, 75856),
// y=36548, k=23412, P_B = y*G.
EccKeyMaterial default_ecc_keys();

}  // namespace chc
