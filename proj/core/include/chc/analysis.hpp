#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "chc/cipher.hpp"
#include "chc/image.hpp"

namespace chc {

struct ChannelHistogram {
    std::uint32_t channels = 0;
    // counts[ch][value]; only the first `channels` rows are meaningful.
    std::array<std::array<std::uint64_t, 256>, 3> counts{};
};

ChannelHistogram histogram(const RgbImage& img);

enum class Direction { Horizontal, Vertical, Diagonal };

// Pearson correlation of every adjacent pixel pair in one direction
// (diagonal = down-right), population moments.  nullopt when fewer than 3
// pairs exist or either side has zero variance — undefined, not 0.
std::optional<double> adjacent_correlation(const RgbImage& img, Direction dir,
                                           std::uint32_t channel);

// Optionally collect the raw (v, neighbor) pairs behind the statistic,
// e.g. for scatter plots.
std::vector<std::pair<std::uint8_t, std::uint8_t>> adjacent_pairs(
    const RgbImage& img, Direction dir, std::uint32_t channel);

// Per-channel percentages over two equal-shaped images.
// npcr: 100 * (# differing samples) / (W*H); uaci: 100 * mean(|d| / 255).
std::vector<double> npcr(const RgbImage& c1, const RgbImage& c2);
std::vector<double> uaci(const RgbImage& c1, const RgbImage& c2);

struct ChiSquare {
    double statistic = 0.0;
    double p_value = 1.0;  // upper tail, 255 dof
};

// Goodness of fit of one channel's histogram against the uniform law.
ChiSquare chi_square_uniform(const std::array<std::uint64_t, 256>& counts);
ChiSquare chi_square_uniform(std::span<const std::uint8_t> bytes);

// Upper-tail probability of the chi-square law, i.e. the regularized
// incomplete gamma Q(dof/2, x/2).
double chi_square_sf(double x, double dof);

// ---- canned experiments ------------------------------------------------

struct KeySensitivityReport {
    bool roundtrip_exact = false;      // true key recovers the image bit-exactly
    double perturbation = 0.0;         // added to y0 for the wrong key
    std::vector<double> wrong_key_npcr;  // original vs wrong-key decryption
};

// Encrypt with `key`, decrypt once with the true key and once with y0
// shifted by `y0_perturbation`.
KeySensitivityReport key_sensitivity_experiment(const RgbImage& img, const ChaosKey& key,
                                                const EccKeyMaterial& ecc,
                                                double y0_perturbation = 1e-15);

struct DataLossReport {
    std::uint32_t cut_col = 0, cut_row = 0, cut_w = 0, cut_h = 0;
    // Fraction of channel samples that differ after decrypting the damaged
    // envelope, and the fraction of pixels with at least one bad channel.
    double corrupted_sample_fraction = 0.0;
    double corrupted_pixel_fraction = 0.0;
};

// Encrypt, zero a cut_w x cut_h block of the cipher raster at
// (cut_row, cut_col), decrypt, compare.  Throws OutOfBounds if the block
// does not fit.
DataLossReport data_loss_experiment(const RgbImage& img, const ChaosKey& key,
                                    const EccKeyMaterial& ecc,
                                    std::uint32_t cut_col, std::uint32_t cut_row,
                                    std::uint32_t cut_w, std::uint32_t cut_h);

struct DifferentialReport {
    std::vector<double> npcr;  // per channel, percent
    std::vector<double> uaci;
};

// Plaintext sensitivity: bump every channel of the pixel at (row, col)
// (0-based) by `delta` mod 256, encrypt both images, compare ciphertexts.
DifferentialReport differential_experiment(const RgbImage& img, const ChaosKey& key,
                                           const EccKeyMaterial& ecc,
                                           std::uint32_t row, std::uint32_t col,
                                           int delta = 1);

}  // namespace chc
