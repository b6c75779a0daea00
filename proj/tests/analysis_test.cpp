#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "chc/analysis.hpp"
#include "chc/errors.hpp"
#include "doctest.h"
#include "support/test_images.hpp"

using namespace chc;

TEST_CASE("histogram counts per channel") {
    RgbImage img = make_image(2, 2, 3);
    img.data = {10, 20, 30, 10, 20, 30, 10, 99, 30, 10, 20, 30};
    const ChannelHistogram h = histogram(img);
    CHECK(h.channels == 3);
    CHECK(h.counts[0][10] == 4);
    CHECK(h.counts[1][20] == 3);
    CHECK(h.counts[1][99] == 1);
    CHECK(h.counts[2][30] == 4);
    CHECK(h.counts[0][20] == 0);

    std::uint64_t total = 0;
    for (int ch = 0; ch < 3; ++ch)
        for (int v = 0; v < 256; ++v) total += h.counts[ch][v];
    CHECK(total == 12);
}

TEST_CASE("histogram is invariant under permutation of a gray image") {
    const RgbImage img = testutil::random_image(16, 16, 1, 3);
    const KeystreamBundle ks = derive_keystreams(default_chaos_key(), img.data.size());
    RgbImage shuffled = img;
    shuffled.data = confuse(img.data, ks.permutation);
    const ChannelHistogram a = histogram(img);
    const ChannelHistogram b = histogram(shuffled);
    CHECK(a.counts[0] == b.counts[0]);
}

TEST_CASE("adjacent correlation of perfectly correlated columns") {
    // every row identical: vertical neighbor pairs are (v, v)
    RgbImage img = make_image(5, 4, 1);
    for (std::uint32_t r = 0; r < 4; ++r)
        for (std::uint32_t c = 0; c < 5; ++c) img.at(r, c) = static_cast<std::uint8_t>(40 * c);
    const auto v = adjacent_correlation(img, Direction::Vertical, 0);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adjacent correlation of anti-correlated rows") {
    // alternating rows v and 255-v: vertical pairs are (v, 255-v)
    RgbImage img = make_image(6, 4, 1);
    for (std::uint32_t r = 0; r < 4; ++r)
        for (std::uint32_t c = 0; c < 6; ++c) {
            const std::uint8_t v = static_cast<std::uint8_t>(10 + 30 * c);
            img.at(r, c) = (r % 2 == 0) ? v : static_cast<std::uint8_t>(255 - v);
        }
    const auto v = adjacent_correlation(img, Direction::Vertical, 0);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("correlation undefined for constant or tiny inputs") {
    RgbImage constant = make_image(8, 8, 1);
    for (auto& b : constant.data) b = 77;
    CHECK(!adjacent_correlation(constant, Direction::Horizontal, 0).has_value());

    // 2x1: a single horizontal pair is below the 3-pair minimum
    RgbImage two = make_image(2, 1, 1);
    two.data = {0, 255};
    CHECK(!adjacent_correlation(two, Direction::Horizontal, 0).has_value());
    // and no vertical pairs exist at all
    CHECK(!adjacent_correlation(two, Direction::Vertical, 0).has_value());
    CHECK(!adjacent_correlation(two, Direction::Diagonal, 0).has_value());
}

TEST_CASE("correlation matches a hand-computed case") {
    // 4x1 strip: pairs (0,10), (10,5), (5,250)
    // a = (0,10,5) mean 5; b = (10,5,250) mean 265/3
    // cov = -25, var_a = 50, var_b = 352950/9  =>  r = -1.5 / sqrt(7059)
    RgbImage strip = make_image(4, 1, 1);
    strip.data = {0, 10, 5, 250};
    const auto r = adjacent_correlation(strip, Direction::Horizontal, 0);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(-1.5 / std::sqrt(7059.0)).epsilon(1e-12));
}

TEST_CASE("smooth images correlate, scrambled ones do not") {
    const RgbImage img = testutil::smooth_image(64, 64, 1, 9);
    const auto r = adjacent_correlation(img, Direction::Horizontal, 0);
    REQUIRE(r.has_value());
    CHECK(*r > 0.8);

    const RgbImage noise = testutil::random_image(64, 64, 1, 10);
    const auto rn = adjacent_correlation(noise, Direction::Horizontal, 0);
    REQUIRE(rn.has_value());
    CHECK(std::fabs(*rn) < 0.1);
}

TEST_CASE("adjacent_pairs sizes and channel bounds") {
    const RgbImage img = testutil::random_image(7, 5, 3, 11);
    CHECK(adjacent_pairs(img, Direction::Horizontal, 0).size() == 5u * 6u);
    CHECK(adjacent_pairs(img, Direction::Vertical, 1).size() == 4u * 7u);
    CHECK(adjacent_pairs(img, Direction::Diagonal, 2).size() == 4u * 6u);
    CHECK_THROWS_AS(adjacent_pairs(img, Direction::Horizontal, 3), OutOfBounds);
    CHECK_THROWS_AS(adjacent_correlation(img, Direction::Horizontal, 5), OutOfBounds);
}

TEST_CASE("npcr and uaci basics") {
    const RgbImage a = testutil::random_image(8, 8, 3, 13);
    // identical images
    const auto same_npcr = npcr(a, a);
    const auto same_uaci = uaci(a, a);
    for (int ch = 0; ch < 3; ++ch) {
        CHECK(same_npcr[ch] == 0.0);
        CHECK(same_uaci[ch] == 0.0);
    }

    // complement image: every sample differs, |d| sums to the max
    RgbImage b = a;
    for (auto& v : b.data) v = static_cast<std::uint8_t>(255 - v);
    const auto comp_npcr = npcr(a, b);
    for (int ch = 0; ch < 3; ++ch) CHECK(comp_npcr[ch] == 100.0);

    RgbImage zero = make_image(8, 8, 3);
    RgbImage full = make_image(8, 8, 3);
    for (auto& v : full.data) v = 255;
    const auto max_uaci = uaci(zero, full);
    for (int ch = 0; ch < 3; ++ch) CHECK(max_uaci[ch] == 100.0);

    // symmetry
    CHECK(npcr(a, b) == npcr(b, a));
    CHECK(uaci(a, b) == uaci(b, a));
}

TEST_CASE("npcr counts per channel independently") {
    RgbImage a = make_image(2, 2, 3);
    RgbImage b = a;
    b.at(0, 0, 0) = 1;
    b.at(1, 1, 0) = 2;
    const auto r = npcr(a, b);
    CHECK(r[0] == 50.0);  // 2 of 4 pixels
    CHECK(r[1] == 0.0);
    CHECK(r[2] == 0.0);
    const auto u = uaci(a, b);
    CHECK(u[0] == doctest::Approx(100.0 * (1.0 + 2.0) / (4 * 255.0)));
    CHECK(u[1] == 0.0);
}

TEST_CASE("npcr/uaci reject shape mismatches") {
    const RgbImage a = testutil::random_image(4, 4, 3, 17);
    const RgbImage b = testutil::random_image(4, 5, 3, 17);
    const RgbImage c = testutil::random_image(4, 4, 1, 17);
    CHECK_THROWS_AS(npcr(a, b), DimensionMismatch);
    CHECK_THROWS_AS(uaci(a, b), DimensionMismatch);
    CHECK_THROWS_AS(npcr(a, c), DimensionMismatch);
}

TEST_CASE("uaci of independent uniform noise sits near its expectation") {
    // E|X-Y|/255 for independent uniform bytes = (256^2 - 1)/(3*256*255)
    const double expectation = 100.0 * 65535.0 / (3.0 * 256.0 * 255.0);  // 33.4635...
    const RgbImage a = testutil::random_image(128, 128, 3, 19);
    const RgbImage b = testutil::random_image(128, 128, 3, 23);
    const auto u = uaci(a, b);
    for (int ch = 0; ch < 3; ++ch) CHECK(std::fabs(u[ch] - expectation) < 0.5);
}

TEST_CASE("chi-square survival function against frozen references") {
    // reference values from an independent implementation
    CHECK(chi_square_sf(200.0, 255.0) == doctest::Approx(0.9954254445419519).epsilon(1e-10));
    CHECK(chi_square_sf(255.0, 255.0) == doctest::Approx(0.48822252177040637).epsilon(1e-10));
    CHECK(chi_square_sf(290.0, 255.0) == doctest::Approx(0.06510077382571297).epsilon(1e-10));
    // the 1% critical value for 255 dof
    CHECK(chi_square_sf(310.45738821990585, 255.0) == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(chi_square_sf(0.0, 255.0) == 1.0);
    CHECK(chi_square_sf(-5.0, 255.0) == 1.0);
    CHECK(chi_square_sf(1e9, 255.0) == doctest::Approx(0.0));
    CHECK(chi_square_sf(3.84, 1.0) == doctest::Approx(0.05).epsilon(1e-2));
    CHECK_THROWS_AS(chi_square_sf(10.0, 0.0), InvalidParams);
}

TEST_CASE("chi-square uniformity verdicts") {
    // perfectly flat histogram
    std::array<std::uint64_t, 256> flat{};
    flat.fill(100);
    const ChiSquare f = chi_square_uniform(flat);
    CHECK(f.statistic == 0.0);
    CHECK(f.p_value == 1.0);

    // a single spike is decisively rejected
    std::array<std::uint64_t, 256> spike{};
    spike[7] = 25600;
    const ChiSquare s = chi_square_uniform(spike);
    CHECK(s.statistic > 1e5);
    CHECK(s.p_value < 1e-12);

    // uniform random bytes are not rejected at the 1% level
    std::mt19937 rng(29);
    std::vector<std::uint8_t> bytes(65536);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng() & 0xff);
    CHECK(chi_square_uniform(bytes).p_value > 0.01);

    std::array<std::uint64_t, 256> empty{};
    CHECK_THROWS_AS(chi_square_uniform(empty), InvalidParams);
}

TEST_CASE("key sensitivity experiment") {
    const RgbImage img = testutil::random_image(24, 24, 3, 31);
    const ChaosKey key = default_chaos_key();
    const EccKeyMaterial ecc = default_ecc_keys();

    const KeySensitivityReport rep = key_sensitivity_experiment(img, key, ecc, 1e-15);
    CHECK(rep.roundtrip_exact);
    CHECK(rep.perturbation == 1e-15);
    REQUIRE(rep.wrong_key_npcr.size() == 3);
    for (const double v : rep.wrong_key_npcr) {
        CHECK(v >= 0.0);
        CHECK(v <= 100.0);
    }

    // 1e-15 needs a long stream to grow (full-size images exercise that); a
    // visible perturbation must scramble even this small one
    const KeySensitivityReport big = key_sensitivity_experiment(img, key, ecc, 1e-3);
    CHECK(big.roundtrip_exact);
    for (const double v : big.wrong_key_npcr) CHECK(v > 98.0);

    // zero perturbation degenerates to the true key
    const KeySensitivityReport zero = key_sensitivity_experiment(img, key, ecc, 0.0);
    CHECK(zero.roundtrip_exact);
    for (const double v : zero.wrong_key_npcr) CHECK(v == 0.0);
}

TEST_CASE("data loss experiment") {
    const RgbImage img = testutil::random_image(64, 64, 3, 37);
    const ChaosKey key = default_chaos_key();
    const EccKeyMaterial ecc = default_ecc_keys();

    // zero-area cut: decryption is exact
    const DataLossReport none = data_loss_experiment(img, key, ecc, 0, 0, 0, 0);
    CHECK(none.corrupted_sample_fraction == 0.0);
    CHECK(none.corrupted_pixel_fraction == 0.0);

    // 16x16 cut of a 64x64 image: damage stays within the 2x bound
    const DataLossReport rep = data_loss_experiment(img, key, ecc, 20, 20, 16, 16);
    CHECK(rep.corrupted_sample_fraction > 0.03);
    CHECK(rep.corrupted_sample_fraction <= 2.0 * (16.0 * 16.0) / (64.0 * 64.0) + 0.01);
    CHECK(rep.corrupted_pixel_fraction >= rep.corrupted_sample_fraction);
    CHECK(rep.cut_w == 16);

    CHECK_THROWS_AS(data_loss_experiment(img, key, ecc, 60, 0, 16, 4), OutOfBounds);
    CHECK_THROWS_AS(data_loss_experiment(img, key, ecc, 0, 60, 4, 16), OutOfBounds);
}

TEST_CASE("differential experiment") {
    const RgbImage img = testutil::random_image(16, 16, 3, 41);
    const ChaosKey key = default_chaos_key();
    const EccKeyMaterial ecc = default_ecc_keys();

    const DifferentialReport rep = differential_experiment(img, key, ecc, 7, 9, 1);
    REQUIRE(rep.npcr.size() == 3);
    for (const double v : rep.npcr) CHECK(v > 96.0);
    for (const double v : rep.uaci) {
        CHECK(v > 25.0);
        CHECK(v < 42.0);
    }

    // delta 0 changes nothing
    const DifferentialReport same = differential_experiment(img, key, ecc, 7, 9, 0);
    for (const double v : same.npcr) CHECK(v == 0.0);

    CHECK_THROWS_AS(differential_experiment(img, key, ecc, 16, 0, 1), OutOfBounds);
    CHECK_THROWS_AS(differential_experiment(img, key, ecc, 0, 99, 1), OutOfBounds);
}
