#include "lbd/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include <png.h>

#include "lbd/errors.hpp"

namespace lbd {

namespace {

// PGM header tokens are separated by whitespace; '#' starts a comment that
// runs to end of line.
int next_pgm_token(std::istream& in, const std::string& path) {
    for (;;) {
        int c = in.peek();
        if (c == EOF) throw IoError("truncated PGM header: " + path);
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value)) throw TypeError("malformed PGM header: " + path);
    return value;
}

} // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    char m0 = 0, m1 = 0;
    f.get(m0);
    f.get(m1);
    if (m0 != 'P' || m1 != '5') throw TypeError("not a binary PGM: " + path);
    const int width = next_pgm_token(f, path);
    const int height = next_pgm_token(f, path);
    const int maxval = next_pgm_token(f, path);
    if (width < 1 || height < 1) throw TypeError("bad PGM dimensions: " + path);
    if (maxval != 255) throw TypeError("only maxval 255 PGM supported: " + path);
    f.get(); // single whitespace byte before the raster
    std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height);
    f.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (f.gcount() != static_cast<std::streamsize>(raster.size()))
        throw IoError("truncated PGM raster: " + path);
    GrayImage im(width, height);
    for (std::size_t i = 0; i < raster.size(); ++i) im.values[i] = raster[i] / 255.0;
    return im;
}

void write_pgm(const GrayImage& image, const std::string& path) {
    if (image.width < 1 || image.height < 1) throw ParameterError("empty image");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << "P5\n" << image.width << " " << image.height << "\n255\n";
    std::vector<unsigned char> raster(image.values.size());
    for (std::size_t i = 0; i < raster.size(); ++i) {
        const double v = std::clamp(image.values[i], 0.0, 1.0);
        raster[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    f.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (!f) throw IoError("write failure: " + path);
}

GrayImage read_png(const std::string& path) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!fp) throw IoError("cannot open: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng init failure");
    }
    std::vector<png_bytep> rows;
    std::vector<png_byte> data;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw TypeError("not a readable PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    data.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(png, rows.data());
    const int channels = png_get_channels(png, info);
    png_destroy_read_struct(&png, &info, nullptr);

    GrayImage im(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        const png_bytep row = data.data() + y * rowbytes;
        for (png_uint_32 x = 0; x < width; ++x) {
            double v;
            if (channels >= 3) {
                const png_bytep px = row + x * channels;
                v = (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
            } else {
                v = row[x * channels] / 255.0;
            }
            im.at(static_cast<int>(x), static_cast<int>(y)) = std::clamp(v, 0.0, 1.0);
        }
    }
    return im;
}

GrayImage load_image(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    unsigned char sig[8] = {};
    f.read(reinterpret_cast<char*>(sig), 8);
    f.close();
    if (sig[0] == 'P' && sig[1] == '5') return read_pgm(path);
    if (sig[0] == 0x89 && sig[1] == 'P' && sig[2] == 'N' && sig[3] == 'G') return read_png(path);
    throw TypeError("unsupported image format (need PGM P5 or PNG): " + path);
}

} // namespace lbd
