#include "docflow/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace docflow {

namespace {

constexpr char kFlowMagic[4] = {'D', 'F', 'L', '1'};

void put_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

void put_f32_le(std::ostream& os, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32_le(os, bits);
}

float get_f32_le(std::istream& is) {
    const std::uint32_t bits = get_u32_le(is);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

}  // namespace

RasterImage load_image(const std::string& path) {
    {
        std::ifstream probe(path, std::ios::binary);
        if (!probe) throw IoError("cannot open " + path);
    }
    png_image im;
    std::memset(&im, 0, sizeof(im));
    im.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&im, path.c_str()))
        throw FormatError(path + ": " + im.message);

    int channels;
    if (im.format & PNG_FORMAT_FLAG_COLOR)
        channels = (im.format & PNG_FORMAT_FLAG_ALPHA) ? 4 : 3;
    else
        channels = (im.format & PNG_FORMAT_FLAG_ALPHA) ? 4 : 1;
    im.format = channels == 1 ? PNG_FORMAT_GRAY : (channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_RGBA);

    const int w = static_cast<int>(im.width);
    const int h = static_cast<int>(im.height);
    std::vector<unsigned char> buffer(static_cast<std::size_t>(w) * h * channels);
    if (!png_image_finish_read(&im, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = im.message;
        png_image_free(&im);
        throw FormatError(path + ": " + msg);
    }

    RasterImage img(w, h, channels);
    for (int y = 0; y < h; ++y) {
        const unsigned char* row = buffer.data() + static_cast<std::size_t>(y) * w * channels;
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < channels; ++c)
                img.planes[static_cast<std::size_t>(c)](y, x) =
                    float(row[x * channels + c]) / 255.0f;
    }
    return img;
}

void save_image(const RasterImage& img, const std::string& path) {
    if (img.empty()) throw FormatError("cannot save empty image");
    const int w = img.width(), h = img.height(), channels = img.channels();

    png_image im;
    std::memset(&im, 0, sizeof(im));
    im.version = PNG_IMAGE_VERSION;
    im.width = static_cast<png_uint_32>(w);
    im.height = static_cast<png_uint_32>(h);
    im.format = channels == 1 ? PNG_FORMAT_GRAY : (channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_RGBA);

    std::vector<unsigned char> buffer(static_cast<std::size_t>(w) * h * channels);
    for (int y = 0; y < h; ++y) {
        unsigned char* row = buffer.data() + static_cast<std::size_t>(y) * w * channels;
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < channels; ++c) {
                const float v = std::clamp(img.planes[static_cast<std::size_t>(c)](y, x), 0.0f, 1.0f);
                row[x * channels + c] = static_cast<unsigned char>(std::lround(v * 255.0f));
            }
    }
    if (!png_image_write_to_file(&im, path.c_str(), 0, buffer.data(), 0, nullptr))
        throw IoError("writing " + path + ": " + im.message);
}

void save_flow(const FlowField& flow, const std::string& path) {
    if (flow.empty()) throw FormatError("cannot save empty flow");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os.write(kFlowMagic, 4);
    put_u32_le(os, static_cast<std::uint32_t>(flow.width()));
    put_u32_le(os, static_cast<std::uint32_t>(flow.height()));
    for (int y = 0; y < flow.height(); ++y)
        for (int x = 0; x < flow.width(); ++x) {
            put_f32_le(os, flow.u(y, x));
            put_f32_le(os, flow.v(y, x));
        }
    for (int y = 0; y < flow.height(); ++y)
        for (int x = 0; x < flow.width(); ++x)
            os.put(flow.mask(y, x) ? char(1) : char(0));
    if (!os) throw IoError("writing " + path);
}

FlowField load_flow(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kFlowMagic, 4) != 0)
        throw FormatError(path + ": bad magic");
    const std::uint32_t w = get_u32_le(is);
    const std::uint32_t h = get_u32_le(is);
    if (!is || w < 1 || h < 1 || w > (1u << 20) || h > (1u << 20))
        throw FormatError(path + ": bad dimensions");
    FlowField flow(static_cast<int>(w), static_cast<int>(h));
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x) {
            flow.u(y, x) = get_f32_le(is);
            flow.v(y, x) = get_f32_le(is);
        }
    for (std::uint32_t y = 0; y < h; ++y)
        for (std::uint32_t x = 0; x < w; ++x) {
            char m = 0;
            is.get(m);
            flow.mask(y, x) = m ? 1 : 0;
        }
    if (!is) throw FormatError(path + ": truncated");
    return flow;
}

}  // namespace docflow
