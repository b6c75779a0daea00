#include "chc/image.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "chc/errors.hpp"

namespace chc {

RgbImage make_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels) {
    if (width == 0 || height == 0)
        throw InvalidParams("image: width and height must be >= 1");
    if (channels != 1 && channels != 3)
        throw InvalidParams("image: channels must be 1 or 3");
    const std::uint64_t n =
        static_cast<std::uint64_t>(width) * height * channels;
    if (n > 0xffffffffull)
        throw InvalidParams("image: too large");
    RgbImage img{width, height, channels, {}};
    img.data.assign(static_cast<std::size_t>(n), 0);
    return img;
}

namespace {

struct Cursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    std::uint8_t peek() const { return bytes[pos]; }
};

bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Whitespace in a PNM header may contain '#' comments running to end of line.
void skip_space_and_comments(Cursor& c) {
    while (!c.eof()) {
        if (is_space(c.peek())) {
            ++c.pos;
        } else if (c.peek() == '#') {
            while (!c.eof() && c.peek() != '\n') ++c.pos;
        } else {
            break;
        }
    }
}

std::uint64_t read_uint(Cursor& c, const char* what) {
    skip_space_and_comments(c);
    if (c.eof() || c.peek() < '0' || c.peek() > '9')
        throw MalformedHeader(std::string("ppm: expected ") + what);
    std::uint64_t v = 0;
    while (!c.eof() && c.peek() >= '0' && c.peek() <= '9') {
        v = v * 10 + (c.peek() - '0');
        if (v > 0xffffffffull) throw MalformedHeader(std::string("ppm: ") + what + " too large");
        ++c.pos;
    }
    return v;
}

}  // namespace

RgbImage load_ppm(std::span<const std::uint8_t> bytes) {
    Cursor c{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw MalformedHeader("ppm: missing P5/P6 magic");
    std::uint32_t channels;
    if (bytes[1] == '6')
        channels = 3;
    else if (bytes[1] == '5')
        channels = 1;
    else
        throw MalformedHeader("ppm: unsupported magic (want P5 or P6)");
    c.pos = 2;

    const std::uint64_t width = read_uint(c, "width");
    const std::uint64_t height = read_uint(c, "height");
    const std::uint64_t maxval = read_uint(c, "maxval");
    if (width == 0 || height == 0)
        throw MalformedHeader("ppm: zero width or height");
    if (maxval != 255)
        throw UnsupportedMaxval("ppm: maxval " + std::to_string(maxval) +
                                " not supported (need 255)");
    // Exactly one whitespace byte separates the header from the raster.
    if (c.eof() || !is_space(c.peek()))
        throw MalformedHeader("ppm: missing separator after maxval");
    ++c.pos;

    const std::uint64_t need = width * height * channels;
    if (need > 0xffffffffull) throw MalformedHeader("ppm: image too large");
    if (bytes.size() - c.pos < need)
        throw TruncatedData("ppm: raster has " + std::to_string(bytes.size() - c.pos) +
                            " bytes, need " + std::to_string(need));

    RgbImage img{static_cast<std::uint32_t>(width), static_cast<std::uint32_t>(height),
                 channels, {}};
    img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(c.pos),
                    bytes.begin() + static_cast<std::ptrdiff_t>(c.pos + need));
    return img;
}

std::vector<std::uint8_t> save_ppm(const RgbImage& img) {
    if (img.width == 0 || img.height == 0)
        throw InvalidParams("save_ppm: empty image");
    if (img.channels != 1 && img.channels != 3)
        throw InvalidParams("save_ppm: channels must be 1 or 3");
    if (img.data.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw DimensionMismatch("save_ppm: data size does not match geometry");

    char header[64];
    const int len = std::snprintf(header, sizeof(header), "P%c\n%u %u\n255\n",
                                  img.channels == 3 ? '6' : '5', img.width, img.height);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(len) + img.data.size());
    out.insert(out.end(), header, header + len);
    out.insert(out.end(), img.data.begin(), img.data.end());
    return out;
}

RgbImage load_ppm_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ImageError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return load_ppm(bytes);
}

void save_ppm_file(const RgbImage& img, const std::filesystem::path& path) {
    const auto bytes = save_ppm(img);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ImageError("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw ImageError("short write to " + path.string());
}

}  // namespace chc
