#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace chc {

// 8-bit raster, row-major, channel-interleaved.  channels is 1 (gray)
// or 3 (RGB); data.size() == width * height * channels.
struct RgbImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0;
    std::vector<std::uint8_t> data;

    std::size_t size() const { return data.size(); }

    std::size_t index(std::uint32_t row, std::uint32_t col, std::uint32_t ch) const {
        return (static_cast<std::size_t>(row) * width + col) * channels + ch;
    }
    std::uint8_t at(std::uint32_t row, std::uint32_t col, std::uint32_t ch = 0) const {
        return data[index(row, col, ch)];
    }
    std::uint8_t& at(std::uint32_t row, std::uint32_t col, std::uint32_t ch = 0) {
        return data[index(row, col, ch)];
    }
};

// Zero-filled image; throws InvalidParams for zero dims or channels not in {1,3}.
RgbImage make_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels);

// Binary PPM (P6, 3 channels) / PGM (P5, 1 channel), maxval 255 only.
// Header comments and arbitrary whitespace are accepted on load; save
// emits the canonical "P6\n<w> <h>\n255\n" form.  Errors: MalformedHeader,
// UnsupportedMaxval, TruncatedData.
RgbImage load_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> save_ppm(const RgbImage& img);

RgbImage load_ppm_file(const std::filesystem::path& path);
void save_ppm_file(const RgbImage& img, const std::filesystem::path& path);

}  // namespace chc
