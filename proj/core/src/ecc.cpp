#include "chc/ecc.hpp"

#include <string>

#include "chc/errors.hpp"

namespace chc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Operands are assumed reduced mod p.  add/sub are written to survive
// p close to 2^64.
u64 mod_add(u64 x, u64 y, u64 p) {
    return (x >= p - y && y != 0) ? x - (p - y) : x + y;
}

u64 mod_sub(u64 x, u64 y, u64 p) {
    return x >= y ? x - y : x + (p - y);
}

u64 mod_mul(u64 x, u64 y, u64 p) {
    return static_cast<u64>((static_cast<u128>(x) * y) % p);
}

u64 mod_pow(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mod_mul(r, base, p);
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    return r;
}

// Extended Euclid.  Throws NonInvertible when gcd(a, p) != 1 — with p
// prime that only happens for a ≡ 0, i.e. a division by zero upstream.
u64 mod_inv(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw NonInvertible("inverse of 0 mod p");
    i128 t = 0, new_t = 1;
    u64 r = p, new_r = a;
    while (new_r != 0) {
        const u64 q = r / new_r;
        const i128 tmp_t = t - static_cast<i128>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        const u64 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw NonInvertible("element not invertible mod p");
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

u64 curve_rhs(u64 x, const CurveParams& c) {
    const u64 x2 = mod_mul(x, x, c.p);
    const u64 x3 = mod_mul(x2, x, c.p);
    return mod_add(mod_add(x3, mod_mul(c.a, x, c.p), c.p), c.b, c.p);
}

void require_valid(const CurvePoint& pt, const CurveParams& c, const char* who) {
    if (!pt.infinity && (pt.x >= c.p || pt.y >= c.p))
        throw InvalidParams(std::string(who) + ": coordinates not reduced mod p");
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is exact for every 64-bit integer.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mod_mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

CurveParams validate_curve(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (p < 5) throw InvalidParams("curve: p must be >= 5");
    if (!is_prime_u64(p)) throw NotPrime("curve: p = " + std::to_string(p) + " is not prime");
    CurveParams c{a % p, b % p, p};
    // 4 a^3 + 27 b^2 mod p
    const u64 a3 = mod_mul(mod_mul(c.a, c.a, p), c.a, p);
    const u64 b2 = mod_mul(c.b, c.b, p);
    const u64 disc = mod_add(mod_mul(4 % p, a3, p), mod_mul(27 % p, b2, p), p);
    if (disc == 0) throw SingularCurve("curve: 4a^3 + 27b^2 = 0 mod p");
    return c;
}

bool is_on_curve(const CurvePoint& pt, const CurveParams& c) {
    if (pt.infinity) return true;
    if (pt.x >= c.p || pt.y >= c.p) return false;
    return mod_mul(pt.y, pt.y, c.p) == curve_rhs(pt.x, c);
}

CurvePoint point_negate(const CurvePoint& pt, const CurveParams& c) {
    if (pt.infinity) return pt;
    require_valid(pt, c, "point_negate");
    return CurvePoint::affine(pt.x, pt.y == 0 ? 0 : c.p - pt.y);
}

CurvePoint point_add(const CurvePoint& P, const CurvePoint& Q, const CurveParams& c) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    require_valid(P, c, "point_add");
    require_valid(Q, c, "point_add");

    u64 lambda;
    if (P.x == Q.x) {
        if (mod_add(P.y, Q.y, c.p) == 0) return CurvePoint::make_infinity();
        if (P.y != Q.y)
            throw NonInvertible("point_add: distinct points with equal x");
        // tangent: (3x^2 + a) / (2y); y != 0 is guaranteed above (p odd)
        const u64 num = mod_add(mod_mul(3 % c.p, mod_mul(P.x, P.x, c.p), c.p), c.a, c.p);
        lambda = mod_mul(num, mod_inv(mod_add(P.y, P.y, c.p), c.p), c.p);
    } else {
        const u64 num = mod_sub(Q.y, P.y, c.p);
        const u64 den = mod_sub(Q.x, P.x, c.p);
        lambda = mod_mul(num, mod_inv(den, c.p), c.p);
    }
    const u64 x3 = mod_sub(mod_sub(mod_mul(lambda, lambda, c.p), P.x, c.p), Q.x, c.p);
    const u64 y3 = mod_sub(mod_mul(lambda, mod_sub(P.x, x3, c.p), c.p), P.y, c.p);
    return CurvePoint::affine(x3, y3);
}

CurvePoint point_double(const CurvePoint& P, const CurveParams& c) {
    return point_add(P, P, c);
}

CurvePoint scalar_mul(std::uint64_t n, const CurvePoint& P, const CurveParams& c) {
    if (n == 0 || P.infinity) return CurvePoint::make_infinity();
    require_valid(P, c, "scalar_mul");
    int bit = 63;
    while (bit > 0 && !((n >> bit) & 1)) --bit;
    CurvePoint r = P;
    for (--bit; bit >= 0; --bit) {
        r = point_add(r, r, c);
        if ((n >> bit) & 1) r = point_add(r, P, c);
    }
    return r;
}

KeyPair make_keypair(std::uint64_t private_scalar, const CurvePoint& G,
                     const CurveParams& c) {
    if (private_scalar == 0)
        throw InvalidParams("make_keypair: private scalar must be >= 1");
    return {private_scalar, scalar_mul(private_scalar, G, c)};
}

PointCipher elgamal_encrypt(const CurvePoint& message, std::uint64_t k,
                            const CurvePoint& public_key, const CurvePoint& G,
                            const CurveParams& c) {
    if (k == 0) throw InvalidParams("elgamal_encrypt: k must be >= 1");
    return {scalar_mul(k, G, c), point_add(message, scalar_mul(k, public_key, c), c)};
}

CurvePoint elgamal_decrypt(const PointCipher& ct, std::uint64_t private_scalar,
                           const CurveParams& c) {
    const CurvePoint shared = scalar_mul(private_scalar, ct.c1, c);
    return point_add(ct.c2, point_negate(shared, c), c);
}

std::vector<std::uint8_t> ecc_mask_stream(const CurvePoint& S0, const CurvePoint& G,
                                          const CurveParams& c, std::size_t n_bytes) {
    std::vector<std::uint8_t> mask(n_bytes);
    CurvePoint s = S0;
    for (std::size_t i = 0; i < n_bytes; ++i) {
        if (s.infinity) {
            mask[i] = 0;
            s = G;
        } else {
            mask[i] = static_cast<std::uint8_t>(s.x & 0xff);
            s = point_add(s, G, c);
        }
    }
    return mask;
}

std::array<std::uint8_t, kPointWireSize> serialize_point(const CurvePoint& pt) {
    std::array<std::uint8_t, kPointWireSize> out{};
    out[0] = pt.infinity ? 0 : 1;
    if (!pt.infinity) {
        for (int i = 0; i < 8; ++i) out[1 + i] = static_cast<std::uint8_t>(pt.x >> (8 * i));
        for (int i = 0; i < 8; ++i) out[9 + i] = static_cast<std::uint8_t>(pt.y >> (8 * i));
    }
    return out;
}

CurvePoint deserialize_point(const std::uint8_t* bytes) {
    if (bytes[0] == 0) return CurvePoint::make_infinity();
    if (bytes[0] != 1)
        throw MalformedEnvelope("point: flag byte must be 0 or 1");
    u64 x = 0, y = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | bytes[1 + i];
    for (int i = 7; i >= 0; --i) y = (y << 8) | bytes[9 + i];
    return CurvePoint::affine(x, y);
}

EccKeyMaterial default_ecc_keys() {
    EccKeyMaterial m;
    m.curve = validate_curve(5376, 2438, 123457);
    m.G = CurvePoint::affine(2225, 75856);
    m.private_scalar = 36548;
    m.ephemeral_k = 23412;
    m.public_point = scalar_mul(m.private_scalar, m.G, m.curve);
    return m;
}

}  // namespace chc
