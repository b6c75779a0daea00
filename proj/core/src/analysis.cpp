#include "chc/analysis.hpp"

#include <cmath>
#include <string>

#include "chc/errors.hpp"

namespace chc {

ChannelHistogram histogram(const RgbImage& img) {
    if (img.channels != 1 && img.channels != 3)
        throw InvalidParams("histogram: channels must be 1 or 3");
    ChannelHistogram h;
    h.channels = img.channels;
    const std::size_t n = img.data.size();
    for (std::size_t i = 0; i < n; ++i)
        ++h.counts[i % img.channels][img.data[i]];
    return h;
}

namespace {

struct Offsets {
    std::uint32_t drow, dcol;
};

Offsets offsets_for(Direction dir) {
    switch (dir) {
        case Direction::Horizontal: return {0, 1};
        case Direction::Vertical:   return {1, 0};
        case Direction::Diagonal:   return {1, 1};
    }
    throw InvalidParams("adjacent pairs: bad direction");
}

void check_channel(const RgbImage& img, std::uint32_t channel) {
    if (channel >= img.channels)
        throw OutOfBounds("channel " + std::to_string(channel) + " out of range for " +
                          std::to_string(img.channels) + "-channel image");
}

void check_same_shape(const RgbImage& a, const RgbImage& b, const char* who) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DimensionMismatch(std::string(who) + ": image shapes differ");
}

}  // namespace

std::vector<std::pair<std::uint8_t, std::uint8_t>> adjacent_pairs(
    const RgbImage& img, Direction dir, std::uint32_t channel) {
    check_channel(img, channel);
    const auto [drow, dcol] = offsets_for(dir);
    std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
    if (img.height <= drow || img.width <= dcol) return pairs;
    pairs.reserve(static_cast<std::size_t>(img.height - drow) * (img.width - dcol));
    for (std::uint32_t r = 0; r + drow < img.height; ++r)
        for (std::uint32_t c = 0; c + dcol < img.width; ++c)
            pairs.emplace_back(img.at(r, c, channel), img.at(r + drow, c + dcol, channel));
    return pairs;
}

std::optional<double> adjacent_correlation(const RgbImage& img, Direction dir,
                                           std::uint32_t channel) {
    check_channel(img, channel);
    const auto [drow, dcol] = offsets_for(dir);
    if (img.height <= drow || img.width <= dcol) return std::nullopt;

    const std::uint64_t n =
        static_cast<std::uint64_t>(img.height - drow) * (img.width - dcol);
    if (n < 3) return std::nullopt;

    double sum_a = 0.0, sum_b = 0.0;
    for (std::uint32_t r = 0; r + drow < img.height; ++r)
        for (std::uint32_t c = 0; c + dcol < img.width; ++c) {
            sum_a += img.at(r, c, channel);
            sum_b += img.at(r + drow, c + dcol, channel);
        }
    const double mean_a = sum_a / static_cast<double>(n);
    const double mean_b = sum_b / static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::uint32_t r = 0; r + drow < img.height; ++r)
        for (std::uint32_t c = 0; c + dcol < img.width; ++c) {
            const double da = img.at(r, c, channel) - mean_a;
            const double db = img.at(r + drow, c + dcol, channel) - mean_b;
            cov += da * db;
            var_a += da * da;
            var_b += db * db;
        }
    if (var_a == 0.0 || var_b == 0.0) return std::nullopt;
    return cov / std::sqrt(var_a * var_b);
}

std::vector<double> npcr(const RgbImage& c1, const RgbImage& c2) {
    check_same_shape(c1, c2, "npcr");
    const std::uint64_t per_channel = static_cast<std::uint64_t>(c1.width) * c1.height;
    std::vector<std::uint64_t> diff(c1.channels, 0);
    for (std::size_t i = 0; i < c1.data.size(); ++i)
        if (c1.data[i] != c2.data[i]) ++diff[i % c1.channels];
    std::vector<double> out(c1.channels);
    for (std::uint32_t ch = 0; ch < c1.channels; ++ch)
        out[ch] = 100.0 * static_cast<double>(diff[ch]) / static_cast<double>(per_channel);
    return out;
}

std::vector<double> uaci(const RgbImage& c1, const RgbImage& c2) {
    check_same_shape(c1, c2, "uaci");
    const std::uint64_t per_channel = static_cast<std::uint64_t>(c1.width) * c1.height;
    std::vector<std::uint64_t> absdiff(c1.channels, 0);
    for (std::size_t i = 0; i < c1.data.size(); ++i) {
        const int d = static_cast<int>(c1.data[i]) - static_cast<int>(c2.data[i]);
        absdiff[i % c1.channels] += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
    std::vector<double> out(c1.channels);
    for (std::uint32_t ch = 0; ch < c1.channels; ++ch)
        out[ch] = 100.0 * static_cast<double>(absdiff[ch]) /
                  (255.0 * static_cast<double>(per_channel));
    return out;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by series, for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction,
// for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0) || !std::isfinite(dof))
        throw InvalidParams("chi_square_sf: dof must be > 0");
    if (std::isnan(x)) throw InvalidParams("chi_square_sf: x is NaN");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double a = 0.5 * dof;
    const double xx = 0.5 * x;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_contfrac(a, xx);
}

ChiSquare chi_square_uniform(const std::array<std::uint64_t, 256>& counts) {
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    if (total == 0) throw InvalidParams("chi_square_uniform: empty histogram");
    const double expected = static_cast<double>(total) / 256.0;
    double stat = 0.0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return {stat, chi_square_sf(stat, 255.0)};
}

ChiSquare chi_square_uniform(std::span<const std::uint8_t> bytes) {
    std::array<std::uint64_t, 256> counts{};
    for (const auto b : bytes) ++counts[b];
    return chi_square_uniform(counts);
}

KeySensitivityReport key_sensitivity_experiment(const RgbImage& img, const ChaosKey& key,
                                                const EccKeyMaterial& ecc,
                                                double y0_perturbation) {
    const CipherEnvelope env =
        encrypt(img, key, ecc.curve, ecc.G, ecc.public_point, ecc.ephemeral_k);

    const RgbImage good = decrypt(env, key, ecc.private_scalar, ecc.curve, ecc.G);

    ChaosKey wrong = key;
    wrong.initial.y += y0_perturbation;
    const RgbImage bad = decrypt(env, wrong, ecc.private_scalar, ecc.curve, ecc.G);

    KeySensitivityReport rep;
    rep.roundtrip_exact = good.data == img.data;
    rep.perturbation = y0_perturbation;
    rep.wrong_key_npcr = npcr(img, bad);
    return rep;
}

DataLossReport data_loss_experiment(const RgbImage& img, const ChaosKey& key,
                                    const EccKeyMaterial& ecc,
                                    std::uint32_t cut_col, std::uint32_t cut_row,
                                    std::uint32_t cut_w, std::uint32_t cut_h) {
    if (static_cast<std::uint64_t>(cut_col) + cut_w > img.width ||
        static_cast<std::uint64_t>(cut_row) + cut_h > img.height)
        throw OutOfBounds("data_loss_experiment: cut block exceeds the image");

    CipherEnvelope env =
        encrypt(img, key, ecc.curve, ecc.G, ecc.public_point, ecc.ephemeral_k);
    for (std::uint32_t r = cut_row; r < cut_row + cut_h; ++r)
        for (std::uint32_t c = cut_col; c < cut_col + cut_w; ++c)
            for (std::uint32_t ch = 0; ch < img.channels; ++ch)
                env.cipher_bytes[(static_cast<std::size_t>(r) * img.width + c) *
                                     img.channels + ch] = 0;

    const RgbImage recovered = decrypt(env, key, ecc.private_scalar, ecc.curve, ecc.G);

    std::uint64_t bad_samples = 0, bad_pixels = 0;
    const std::size_t n_pixels = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t px = 0; px < n_pixels; ++px) {
        bool any = false;
        for (std::uint32_t ch = 0; ch < img.channels; ++ch) {
            const std::size_t i = px * img.channels + ch;
            if (img.data[i] != recovered.data[i]) {
                ++bad_samples;
                any = true;
            }
        }
        if (any) ++bad_pixels;
    }

    DataLossReport rep;
    rep.cut_col = cut_col;
    rep.cut_row = cut_row;
    rep.cut_w = cut_w;
    rep.cut_h = cut_h;
    rep.corrupted_sample_fraction =
        static_cast<double>(bad_samples) / static_cast<double>(img.data.size());
    rep.corrupted_pixel_fraction =
        static_cast<double>(bad_pixels) / static_cast<double>(n_pixels);
    return rep;
}

DifferentialReport differential_experiment(const RgbImage& img, const ChaosKey& key,
                                           const EccKeyMaterial& ecc,
                                           std::uint32_t row, std::uint32_t col,
                                           int delta) {
    if (row >= img.height || col >= img.width)
        throw OutOfBounds("differential_experiment: pixel outside the image");

    RgbImage bumped = img;
    for (std::uint32_t ch = 0; ch < img.channels; ++ch) {
        std::uint8_t& v = bumped.at(row, col, ch);
        v = static_cast<std::uint8_t>(static_cast<int>(v) + delta);
    }

    const CipherEnvelope e1 =
        encrypt(img, key, ecc.curve, ecc.G, ecc.public_point, ecc.ephemeral_k);
    const CipherEnvelope e2 =
        encrypt(bumped, key, ecc.curve, ecc.G, ecc.public_point, ecc.ephemeral_k);

    const RgbImage c1{img.width, img.height, img.channels, e1.cipher_bytes};
    const RgbImage c2{img.width, img.height, img.channels, e2.cipher_bytes};

    DifferentialReport rep;
    rep.npcr = npcr(c1, c2);
    rep.uaci = uaci(c1, c2);
    return rep;
}

}  // namespace chc
