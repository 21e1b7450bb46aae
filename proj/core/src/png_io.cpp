#include <sharpframe/png_io.hpp>

#include <sharpframe/error.hpp>

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

namespace sharpframe {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

void on_png_error(png_structp png, png_const_charp message) {
    auto* what = static_cast<std::string*>(png_get_error_ptr(png));
    if (what) *what = message;
    png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

} // namespace

LoadedFrame read_png(const fs::path& path) {
    FilePtr file = open_file(path, "rb");
    std::string error;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
    if (!png) throw IoError("libpng: cannot create read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng: cannot create info struct");
    }

    std::vector<unsigned char> buffer;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("failed to decode " + path.string() + ": " + error);
    }

    png_init_io(png, file.get());
    png_read_info(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    buffer.resize(rowbytes * height);
    rows.resize(height);
    for (int r = 0; r < height; ++r) rows[r] = buffer.data() + r * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const bool wide = bit_depth == 16;
    const std::size_t samples_per_row = static_cast<std::size_t>(width) * Frame::channels;
    std::vector<double> data(samples_per_row * height);
    for (int r = 0; r < height; ++r) {
        const unsigned char* row = rows[r];
        double* out = data.data() + r * samples_per_row;
        for (std::size_t i = 0; i < samples_per_row; ++i) {
            out[i] = wide ? ((row[2 * i] << 8) | row[2 * i + 1]) / 65535.0 : row[i] / 255.0;
        }
    }
    return {Frame(height, width, std::move(data)), wide ? BitDepth::u16 : BitDepth::u8};
}

void write_png(const fs::path& path, const Frame& frame, BitDepth depth) {
    if (frame.empty()) throw InputError("write_png: empty frame");
    FilePtr file = open_file(path, "wb");
    std::string error;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
    if (!png) throw IoError("libpng: cannot create write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng: cannot create info struct");
    }

    const int width = frame.width();
    const int height = frame.height();
    const bool wide = depth == BitDepth::u16;
    const std::size_t rowbytes = static_cast<std::size_t>(width) * 3 * (wide ? 2 : 1);
    std::vector<unsigned char> buffer(rowbytes * height);
    auto src = frame.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double v = std::clamp(src[i], 0.0, 1.0);
        if (wide) {
            const auto code = static_cast<std::uint16_t>(std::lround(v * 65535.0));
            buffer[2 * i] = static_cast<unsigned char>(code >> 8); // PNG is big-endian
            buffer[2 * i + 1] = static_cast<unsigned char>(code & 0xff);
        } else {
            buffer[i] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
    }
    std::vector<png_bytep> rows(height);
    for (int r = 0; r < height; ++r) rows[r] = buffer.data() + r * rowbytes;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to encode " + path.string() + ": " + error);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, width, height, wide ? 16 : 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<fs::path> list_frames(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

Video load_video(const fs::path& dir) {
    const auto files = list_frames(dir);
    if (files.empty()) throw InputError("no PNG frames in " + dir.string());
    Video video;
    video.frames.reserve(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        LoadedFrame loaded = read_png(files[i]);
        if (i == 0) {
            video.depth = loaded.depth;
        } else if (!loaded.frame.same_shape(video.frames.front())) {
            throw InputError("frame " + files[i].filename().string() + " is " +
                             std::to_string(loaded.frame.height()) + "x" + std::to_string(loaded.frame.width()) +
                             ", expected " + std::to_string(video.frames.front().height()) + "x" +
                             std::to_string(video.frames.front().width()));
        } else if (loaded.depth != video.depth) {
            throw InputError("frame " + files[i].filename().string() + " has a different bit depth");
        }
        video.frames.push_back(std::move(loaded.frame));
    }
    return video;
}

void save_video(const fs::path& dir, std::span<const Frame> frames, BitDepth depth) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < frames.size(); ++i) write_png(dir / frame_filename(i), frames[i], depth);
}

std::string frame_filename(std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.png", index);
    return name;
}

} // namespace sharpframe
