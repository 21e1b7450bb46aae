#pragma once

#include <sharpframe/image.hpp>

#include <filesystem>
#include <vector>

namespace sharpframe {

enum class BitDepth {
    u8 = 8,
    u16 = 16,
};

struct LoadedFrame {
    Frame frame;
    BitDepth depth = BitDepth::u8;
};

/// Reads an 8- or 16-bit PNG (gray, RGB, palette; alpha is dropped) and maps
/// samples linearly onto [0, 1].
LoadedFrame read_png(const std::filesystem::path& path);

/// Writes an RGB PNG. Samples are clamped to [0, 1] and rounded to the
/// nearest code value; decoding a written file gives back code / max exactly.
void write_png(const std::filesystem::path& path, const Frame& frame, BitDepth depth = BitDepth::u16);

/// A video stored as a directory of PNG frames.
struct Video {
    std::vector<Frame> frames;
    BitDepth depth = BitDepth::u8;
};

/// Sorted list of *.png files in `dir`.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

/// Loads every frame of a PNG-sequence directory. Throws InputError if the
/// directory is empty or frames disagree in size or bit depth.
Video load_video(const std::filesystem::path& dir);

/// Writes frames as `%06d.png` into `dir`, creating it if needed.
void save_video(const std::filesystem::path& dir, std::span<const Frame> frames, BitDepth depth);

/// `%06d.png` for a frame index.
std::string frame_filename(std::size_t index);

} // namespace sharpframe
