#include <sharpframe/dataset_io.hpp>

#include <sharpframe/error.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace sharpframe {

namespace fs = std::filesystem;

std::string manifest_to_json(const DatasetManifest& m) {
    nlohmann::ordered_json j;
    j["source"] = m.source;
    j["ratio_target"] = m.ratio_target;
    j["ratio_measured"] = m.ratio_measured;
    j["seed"] = m.seed;
    j["source_length"] = m.source_length;
    j["frame_count"] = m.windows.size();
    j["windows"] = m.windows;
    j["offsets"] = m.offsets;
    std::vector<int> labels;
    labels.reserve(m.labels.size());
    for (auto l : m.labels) labels.push_back(is_sharp(l) ? 1 : 0);
    j["labels"] = labels;
    return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
    DatasetManifest m;
    try {
        const auto j = nlohmann::json::parse(text);
        m.source = j.value("source", std::string{});
        m.ratio_target = j.at("ratio_target").get<double>();
        m.ratio_measured = j.at("ratio_measured").get<double>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.source_length = j.value("source_length", std::size_t{0});
        m.windows = j.at("windows").get<std::vector<int>>();
        m.offsets = j.at("offsets").get<std::vector<std::size_t>>();
        for (int l : j.at("labels").get<std::vector<int>>()) {
            if (l != 0 && l != 1) throw InputError("manifest: labels must be 0 or 1");
            m.labels.push_back(label_from(l == 1));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("manifest: ") + e.what());
    }
    if (m.windows.size() != m.labels.size() || m.windows.size() != m.offsets.size()) {
        throw InputError("manifest: windows, offsets and labels differ in length");
    }
    return m;
}

DatasetManifest read_manifest(const fs::path& dir) {
    return manifest_from_json(read_text_file(dir / "manifest.json"));
}

bool is_dataset_dir(const fs::path& dir) {
    return fs::is_regular_file(dir / "manifest.json") && fs::is_directory(dir / "blur");
}

FrameSource png_frame_source(const fs::path& dir) {
    auto files = list_frames(dir);
    if (files.empty()) throw InputError("no PNG frames in " + dir.string());
    const std::size_t n = files.size();
    return {n, [files = std::move(files)](std::size_t i) { return read_png(files.at(i)).frame; }};
}

DatasetManifest write_synthesized_dataset(const FrameSource& source, const SynthConfig& config,
                                          const fs::path& out_dir, const std::string& source_name) {
    Rng rng(config.seed);
    const auto windows = sample_windows(source.length, config, rng);
    if (windows.empty()) throw InputError("synth: no window fits into " + std::to_string(source.length) + " frames");

    DatasetManifest m;
    m.source = source_name;
    m.ratio_target = config.ratio;
    m.seed = config.seed;
    m.source_length = source.length;
    m.windows = windows;
    m.offsets = offsets_for_windows(windows);
    m.labels = labels_for_windows(windows);
    m.ratio_measured = measured_ratio(m.labels);

    fs::create_directories(out_dir / "blur");
    fs::create_directories(out_dir / "gt");
    synthesize_streaming(source, windows, [&](std::size_t j, Frame&& blur, Frame&& gt) {
        write_png(out_dir / "blur" / frame_filename(j), blur, BitDepth::u16);
        write_png(out_dir / "gt" / frame_filename(j), gt, BitDepth::u16);
    });
    write_text_file(out_dir / "manifest.json", manifest_to_json(m));
    return m;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace sharpframe
