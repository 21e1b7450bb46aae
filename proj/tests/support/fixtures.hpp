#pragma once

#include <sharpframe/image.hpp>
#include <sharpframe/synth.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sharpframe::fixture {

/// Tileable multi-octave value noise in [0, 1]. Height and width must be
/// multiples of `cell`.
GrayImage value_noise(int height, int width, std::uint64_t seed, int cell = 16, int octaves = 4);

/// Noise texture with a few flat rectangles, so edges of every orientation
/// are present.
GrayImage texture(int height, int width, std::uint64_t seed);

/// RGB frame whose channels are differently mixed textures.
Frame textured_frame(int height, int width, std::uint64_t seed);

GrayImage checkerboard(int height, int width, int cell);
GrayImage constant_image(int height, int width, double value);
Frame constant_frame(int height, int width, double value);

Frame from_gray(const GrayImage& gray);

/// Per-channel convolution with reflect padding, clamped to [0, 1].
Frame blur_frame(const Frame& frame, const Kernel& kernel);
GrayImage box_blur(const GrayImage& image, int k);

/// Camera panning over a tileable RGB texture at an integer velocity of 1-2
/// pixels per frame, so temporal averaging produces motion blur. Frames are
/// cropped lazily.
FrameSource panning_source(int height, int width, std::size_t length, std::uint64_t seed);

/// Frame i has sample (4 i + (r + c + ch) % 4) / D, D the smallest power of
/// two >= max(64, 4 length); dyadic, so window means are exact.
std::vector<Frame> ramp_video(std::size_t length, int height = 4, int width = 4);

/// Unique empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "t");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Runs `command_line` through the shell, optionally from `cwd`, and returns
/// its exit status. Standard error is captured into `err` when given.
int run_command(const std::string& command_line, const std::filesystem::path& cwd = {}, std::string* err = nullptr);

/// Writes every frame of `source` as 16-bit PNGs named like a video directory.
void write_frames(const FrameSource& source, const std::filesystem::path& dir);

/// Files below `root` (relative paths) mapped to their bytes.
std::vector<std::pair<std::string, std::string>> read_tree(const std::filesystem::path& root);

} // namespace sharpframe::fixture
