#pragma once

#include <sharpframe/png_io.hpp>
#include <sharpframe/synth.hpp>

#include <filesystem>
#include <string>

namespace sharpframe {

/// Contents of `manifest.json` in a synthesized dataset directory:
///
///     <dir>/blur/%06d.png   blur frames x_j (16-bit)
///     <dir>/gt/%06d.png     ground truths g_j (16-bit)
///     <dir>/manifest.json
struct DatasetManifest {
    /// Free-form name of the source sequence, used to group ratio reports.
    std::string source;
    double ratio_target = 0.0;
    double ratio_measured = 0.0;
    std::uint64_t seed = 0;
    std::size_t source_length = 0;
    std::vector<int> windows;
    std::vector<std::size_t> offsets;
    std::vector<FrameLabel> labels;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& text);

/// Reads `<dir>/manifest.json`.
DatasetManifest read_manifest(const std::filesystem::path& dir);

bool is_dataset_dir(const std::filesystem::path& dir);

/// Frames of a PNG directory, decoded on demand.
FrameSource png_frame_source(const std::filesystem::path& dir);

/// Samples windows for `source`, writes blur/gt frames and the manifest into
/// `out_dir`, and returns the manifest. Frames are streamed, never all held in
/// memory.
DatasetManifest write_synthesized_dataset(const FrameSource& source, const SynthConfig& config,
                                          const std::filesystem::path& out_dir, const std::string& source_name = {});

/// Reads a whole text file; throws IoError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
/// Writes a text file, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace sharpframe
