#include "chc/cipher.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "chc/errors.hpp"

namespace chc {

ChaosKey default_chaos_key() {
    return {default_system_params(), default_initial_state(), 0.002, 1000};
}

namespace {

// floor(v * 1e10) mod 256 on nonnegative v.  floor/fmod keep this exact in
// doubles for every magnitude the attractor reaches.
std::uint8_t quantize_byte(double v) {
    const double t = std::floor(v * 1e10);
    return static_cast<std::uint8_t>(std::fmod(t, 256.0));
}

void require_same_length(std::size_t a, std::size_t b, const char* who) {
    if (a != b)
        throw LengthMismatch(std::string(who) + ": lengths " + std::to_string(a) +
                             " and " + std::to_string(b) + " differ");
}

}  // namespace

KeystreamBundle derive_keystreams(const ChaosKey& key, std::size_t n) {
    if (n == 0) throw InvalidParams("derive_keystreams: n must be >= 1");
    if (n > 0xffffffffull) throw InvalidParams("derive_keystreams: n exceeds 2^32-1");

    const Trajectory tr = simulate(key.initial, key.params, key.dt, n - 1, key.n_transient);

    KeystreamBundle ks;
    ks.permutation.resize(n);
    std::iota(ks.permutation.begin(), ks.permutation.end(), 0u);
    const auto& st = tr.states;
    // argsort of x; ties (possible only if the trajectory revisits a double
    // exactly) fall back to index order so the result is a permutation
    // regardless.
    std::sort(ks.permutation.begin(), ks.permutation.end(),
              [&st](std::uint32_t i, std::uint32_t j) {
                  if (st[i].x != st[j].x) return st[i].x < st[j].x;
                  return i < j;
              });

    ks.diffusion_bytes.resize(n);
    ks.back_bytes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const State4& s = st[i];
        ks.diffusion_bytes[i] =
            quantize_byte(std::fabs(s.y) + std::fabs(s.z) + std::fabs(s.w));
        ks.back_bytes[i] = quantize_byte(std::fabs(s.x));
    }
    return ks;
}

std::vector<std::uint8_t> confuse(std::span<const std::uint8_t> pixels,
                                  std::span<const std::uint32_t> perm) {
    require_same_length(pixels.size(), perm.size(), "confuse");
    std::vector<std::uint8_t> out(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) out[i] = pixels[perm[i]];
    return out;
}

std::vector<std::uint8_t> unconfuse(std::span<const std::uint8_t> pixels,
                                    std::span<const std::uint32_t> perm) {
    require_same_length(pixels.size(), perm.size(), "unconfuse");
    std::vector<std::uint8_t> out(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) out[perm[i]] = pixels[i];
    return out;
}

std::vector<std::uint8_t> diffuse(std::span<const std::uint8_t> pixels,
                                  std::span<const std::uint8_t> ks,
                                  std::span<const std::uint8_t> mask) {
    require_same_length(pixels.size(), ks.size(), "diffuse");
    require_same_length(pixels.size(), mask.size(), "diffuse");
    std::vector<std::uint8_t> out(pixels.size());
    std::uint8_t prev = 0;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        prev = static_cast<std::uint8_t>(
            static_cast<std::uint8_t>(pixels[i] + prev) ^ ks[i] ^ mask[i]);
        out[i] = prev;
    }
    return out;
}

std::vector<std::uint8_t> undiffuse(std::span<const std::uint8_t> cipher,
                                    std::span<const std::uint8_t> ks,
                                    std::span<const std::uint8_t> mask) {
    require_same_length(cipher.size(), ks.size(), "undiffuse");
    require_same_length(cipher.size(), mask.size(), "undiffuse");
    std::vector<std::uint8_t> out(cipher.size());
    std::uint8_t prev = 0;
    for (std::size_t i = 0; i < cipher.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(
            static_cast<std::uint8_t>(cipher[i] ^ ks[i] ^ mask[i]) - prev);
        prev = cipher[i];
    }
    return out;
}

std::vector<std::uint8_t> diffuse_rev(std::span<const std::uint8_t> pixels,
                                      std::span<const std::uint8_t> ks,
                                      std::span<const std::uint8_t> mask) {
    require_same_length(pixels.size(), ks.size(), "diffuse_rev");
    require_same_length(pixels.size(), mask.size(), "diffuse_rev");
    std::vector<std::uint8_t> out(pixels.size());
    std::uint8_t prev = 0;
    for (std::size_t i = pixels.size(); i-- > 0;) {
        prev = static_cast<std::uint8_t>(
            static_cast<std::uint8_t>(pixels[i] + prev) ^ ks[i] ^ mask[i]);
        out[i] = prev;
    }
    return out;
}

std::vector<std::uint8_t> undiffuse_rev(std::span<const std::uint8_t> cipher,
                                        std::span<const std::uint8_t> ks,
                                        std::span<const std::uint8_t> mask) {
    require_same_length(cipher.size(), ks.size(), "undiffuse_rev");
    require_same_length(cipher.size(), mask.size(), "undiffuse_rev");
    std::vector<std::uint8_t> out(cipher.size());
    std::uint8_t prev = 0;
    for (std::size_t i = cipher.size(); i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(
            static_cast<std::uint8_t>(cipher[i] ^ ks[i] ^ mask[i]) - prev);
        prev = cipher[i];
    }
    return out;
}

namespace {

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32_le(const std::uint8_t* b) {
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

void check_geometry(std::uint32_t w, std::uint32_t h, std::uint8_t ch,
                    std::size_t n_bytes) {
    if (w == 0 || h == 0) throw MalformedEnvelope("envelope: zero width or height");
    if (ch != 1 && ch != 3) throw MalformedEnvelope("envelope: channels must be 1 or 3");
    const std::uint64_t need = static_cast<std::uint64_t>(w) * h * ch;
    if (need > 0xffffffffull) throw MalformedEnvelope("envelope: image too large");
    if (need != n_bytes)
        throw MalformedEnvelope("envelope: cipher length " + std::to_string(n_bytes) +
                                " does not match geometry (" + std::to_string(need) + ")");
}

}  // namespace

std::vector<std::uint8_t> write_envelope(const CipherEnvelope& env) {
    check_geometry(env.width, env.height, env.channels, env.cipher_bytes.size());
    std::vector<std::uint8_t> out;
    out.reserve(kEnvelopeHeaderSize + env.cipher_bytes.size());
    out.insert(out.end(), kEnvelopeMagic.begin(), kEnvelopeMagic.end());
    put_u32_le(out, env.width);
    put_u32_le(out, env.height);
    out.push_back(env.channels);
    const auto pt = serialize_point(env.kG);
    out.insert(out.end(), pt.begin(), pt.end());
    out.insert(out.end(), env.cipher_bytes.begin(), env.cipher_bytes.end());
    return out;
}

CipherEnvelope read_envelope(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kEnvelopeHeaderSize)
        throw MalformedEnvelope("envelope: shorter than header");
    if (!std::equal(kEnvelopeMagic.begin(), kEnvelopeMagic.end(), bytes.begin()))
        throw MalformedEnvelope("envelope: bad magic");
    CipherEnvelope env;
    env.width = get_u32_le(bytes.data() + 4);
    env.height = get_u32_le(bytes.data() + 8);
    env.channels = bytes[12];
    env.kG = deserialize_point(bytes.data() + 13);
    const std::size_t body = bytes.size() - kEnvelopeHeaderSize;
    check_geometry(env.width, env.height, env.channels, body);
    env.cipher_bytes.assign(bytes.begin() + kEnvelopeHeaderSize, bytes.end());
    return env;
}

CipherEnvelope read_envelope_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw MalformedEnvelope("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return read_envelope(bytes);
}

void write_envelope_file(const CipherEnvelope& env, const std::filesystem::path& path) {
    const auto bytes = write_envelope(env);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw MalformedEnvelope("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw MalformedEnvelope("short write to " + path.string());
}

CipherEnvelope encrypt(const RgbImage& img, const ChaosKey& key,
                       const CurveParams& curve, const CurvePoint& G,
                       const CurvePoint& P_B, std::uint64_t k) {
    if (img.width == 0 || img.height == 0 || img.data.empty())
        throw InvalidParams("encrypt: empty image");
    if (img.channels != 1 && img.channels != 3)
        throw InvalidParams("encrypt: channels must be 1 or 3");
    if (img.data.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw DimensionMismatch("encrypt: data size does not match geometry");
    if (k == 0) throw InvalidParams("encrypt: k must be >= 1");

    const std::size_t n = img.data.size();
    const KeystreamBundle ks = derive_keystreams(key, n);

    const CurvePoint S0 = scalar_mul(k, P_B, curve);
    const auto mask = ecc_mask_stream(S0, G, curve, 2 * n);
    const std::span<const std::uint8_t> fwd_mask(mask.data(), n);
    const std::span<const std::uint8_t> rev_mask(mask.data() + n, n);

    const auto confused = confuse(img.data, ks.permutation);
    const auto pass1 = diffuse(confused, ks.diffusion_bytes, fwd_mask);
    auto pass2 = diffuse_rev(pass1, ks.back_bytes, rev_mask);

    CipherEnvelope env;
    env.width = img.width;
    env.height = img.height;
    env.channels = static_cast<std::uint8_t>(img.channels);
    env.kG = scalar_mul(k, G, curve);
    env.cipher_bytes = std::move(pass2);
    return env;
}

RgbImage decrypt(const CipherEnvelope& env, const ChaosKey& key,
                 std::uint64_t y_priv, const CurveParams& curve,
                 const CurvePoint& G) {
    check_geometry(env.width, env.height, env.channels, env.cipher_bytes.size());
    if (y_priv == 0) throw InvalidParams("decrypt: private scalar must be >= 1");

    const std::size_t n = env.cipher_bytes.size();
    const KeystreamBundle ks = derive_keystreams(key, n);

    const CurvePoint S0 = scalar_mul(y_priv, env.kG, curve);
    const auto mask = ecc_mask_stream(S0, G, curve, 2 * n);
    const std::span<const std::uint8_t> fwd_mask(mask.data(), n);
    const std::span<const std::uint8_t> rev_mask(mask.data() + n, n);

    const auto pass1 = undiffuse_rev(env.cipher_bytes, ks.back_bytes, rev_mask);
    const auto confused = undiffuse(pass1, ks.diffusion_bytes, fwd_mask);

    RgbImage img{env.width, env.height, env.channels, {}};
    img.data = unconfuse(confused, ks.permutation);
    return img;
}

}  // namespace chc
