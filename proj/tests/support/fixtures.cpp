#include "fixtures.hpp"

#include <sharpframe/dataset_io.hpp>
#include <sharpframe/error.hpp>
#include <sharpframe/filters.hpp>
#include <sharpframe/png_io.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <random>
#include <sys/wait.h>
#include <unistd.h>

namespace sharpframe::fixture {

namespace fs = std::filesystem;

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

} // namespace

GrayImage value_noise(int height, int width, std::uint64_t seed, int cell, int octaves) {
    std::mt19937_64 rng(seed);
    GrayImage out(height, width);
    double amplitude = 1.0;
    double total = 0.0;
    for (int o = 0; o < octaves && cell >= 1; ++o, cell /= 2, amplitude *= 0.5) {
        const int gh = std::max(1, height / cell);
        const int gw = std::max(1, width / cell);
        std::vector<double> lattice(static_cast<std::size_t>(gh) * gw);
        for (double& v : lattice) v = unit(rng);
        auto at = [&](int r, int c) { return lattice[static_cast<std::size_t>(r % gh) * gw + (c % gw)]; };
        for (int r = 0; r < height; ++r) {
            const int r0 = r / cell;
            const double fy = smooth(static_cast<double>(r % cell) / cell);
            for (int c = 0; c < width; ++c) {
                const int c0 = c / cell;
                const double fx = smooth(static_cast<double>(c % cell) / cell);
                const double top = at(r0, c0) + fx * (at(r0, c0 + 1) - at(r0, c0));
                const double bottom = at(r0 + 1, c0) + fx * (at(r0 + 1, c0 + 1) - at(r0 + 1, c0));
                out(r, c) += amplitude * (top + fy * (bottom - top));
            }
        }
        total += amplitude;
    }
    for (double& v : out.data()) v = std::clamp(v / total, 0.0, 1.0);
    return out;
}

GrayImage texture(int height, int width, std::uint64_t seed) {
    GrayImage img = value_noise(height, width, seed, 16, 5);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int rects = 6;
    for (int n = 0; n < rects; ++n) {
        const int h = 4 + static_cast<int>(unit(rng) * height / 4);
        const int w = 4 + static_cast<int>(unit(rng) * width / 4);
        const int r0 = static_cast<int>(unit(rng) * height);
        const int c0 = static_cast<int>(unit(rng) * width);
        const double value = unit(rng) < 0.5 ? 0.1 + 0.2 * unit(rng) : 0.7 + 0.25 * unit(rng);
        for (int r = r0; r < r0 + h; ++r) {
            for (int c = c0; c < c0 + w; ++c) img(r % height, c % width) = value;
        }
    }
    return img;
}

Frame textured_frame(int height, int width, std::uint64_t seed) {
    const GrayImage a = texture(height, width, seed);
    const GrayImage b = value_noise(height, width, seed + 101, 8, 3);
    Frame f(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            f.at(r, c, 0) = a(r, c);
            f.at(r, c, 1) = 0.7 * a(r, c) + 0.3 * b(r, c);
            f.at(r, c, 2) = 0.5 * a(r, c) + 0.5 * (1.0 - b(r, c));
        }
    }
    return f;
}

GrayImage checkerboard(int height, int width, int cell) {
    GrayImage img(height, width);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) img(r, c) = ((r / cell + c / cell) % 2) ? 1.0 : 0.0;
    }
    return img;
}

GrayImage constant_image(int height, int width, double value) { return GrayImage(height, width, value); }

Frame constant_frame(int height, int width, double value) {
    return Frame(height, width, std::vector<double>(static_cast<std::size_t>(height) * width * 3, value));
}

Frame from_gray(const GrayImage& gray) { return merge_channels(gray, gray, gray); }

Frame blur_frame(const Frame& frame, const Kernel& kernel) {
    return merge_channels(convolve2d(extract_channel(frame, 0), kernel, Padding::reflect),
                          convolve2d(extract_channel(frame, 1), kernel, Padding::reflect),
                          convolve2d(extract_channel(frame, 2), kernel, Padding::reflect));
}

GrayImage box_blur(const GrayImage& image, int k) {
    if (k == 1) return image;
    return convolve2d(image, box_kernel(k), Padding::reflect);
}

FrameSource panning_source(int height, int width, std::size_t length, std::uint64_t seed) {
    constexpr int kTile = 256;
    const Frame tile = textured_frame(kTile, kTile, seed);
    std::mt19937_64 rng(seed * 31 + 7);
    const int vx = 1 + static_cast<int>(rng() % 2);
    const int vy = static_cast<int>(rng() % 3) - 1;
    auto shared = std::make_shared<const Frame>(tile);
    return {length, [shared, height, width, vx, vy](std::size_t i) {
                const Frame& t = *shared;
                const long long n = static_cast<long long>(i);
                const int ox = static_cast<int>(((n * vx) % kTile + kTile) % kTile);
                const int oy = static_cast<int>(((n * vy) % kTile + kTile) % kTile);
                std::vector<double> data(static_cast<std::size_t>(height) * width * 3);
                auto src = t.data();
                for (int r = 0; r < height; ++r) {
                    const int sr = (oy + r) % kTile;
                    double* dst = data.data() + static_cast<std::size_t>(r) * width * 3;
                    int c = 0;
                    while (c < width) {
                        const int sc = (ox + c) % kTile;
                        const int run = std::min(width - c, kTile - sc);
                        std::memcpy(dst + c * 3, src.data() + (static_cast<std::size_t>(sr) * kTile + sc) * 3,
                                    sizeof(double) * 3 * run);
                        c += run;
                    }
                }
                return Frame(height, width, std::move(data));
            }};
}

std::vector<Frame> ramp_video(std::size_t length, int height, int width) {
    double denom = 64.0;
    while (denom < 4.0 * static_cast<double>(length)) denom *= 2.0;
    std::vector<Frame> frames;
    for (std::size_t i = 0; i < length; ++i) {
        Frame f(height, width);
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                for (int ch = 0; ch < 3; ++ch) f.at(r, c, ch) = (4.0 * i + (r + c + ch) % 4) / denom;
            }
        }
        frames.push_back(std::move(f));
    }
    return frames;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    const fs::path base = fs::temp_directory_path();
    for (;;) {
        path_ = base / ("sharpframe-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter.fetch_add(1)));
        if (fs::create_directory(path_)) break;
    }
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

int run_command(const std::string& command_line, const fs::path& cwd, std::string* err) {
    auto quote = [](const std::string& s) {
        std::string q = "'";
        for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
        return q + "'";
    };
    std::string cmd;
    if (!cwd.empty()) cmd += "cd " + quote(cwd.string()) + " && ";
    cmd += command_line;
    std::optional<TempDir> scratch;
    fs::path log;
    if (err) {
        scratch.emplace("stderr");
        log = scratch->path() / "stderr.txt";
        cmd = "(" + cmd + ") 2> " + quote(log.string());
    } else {
        cmd = "(" + cmd + ") 2> /dev/null";
    }
    const int status = std::system(cmd.c_str());
    if (err) *err = fs::exists(log) ? read_text_file(log) : std::string();
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void write_frames(const FrameSource& source, const fs::path& dir) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < source.length; ++i) write_png(dir / frame_filename(i), source.frame(i), BitDepth::u16);
}

std::vector<std::pair<std::string, std::string>> read_tree(const fs::path& root) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        files.emplace_back(fs::relative(entry.path(), root).generic_string(), read_text_file(entry.path()));
    }
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace sharpframe::fixture
