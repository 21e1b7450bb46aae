#pragma once

#include <sharpframe/png_io.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace sharpframe::cli {

/// Frames directory of a video argument: `<dir>/<sub>` when `dir` is a
/// synthesized dataset, `dir` itself otherwise.
std::filesystem::path frames_dir(const std::filesystem::path& dir, const char* sub = "blur");

/// Provenance written next to every output.
class RunRecord {
public:
    RunRecord(const CLI::App& command, std::string name);

    nlohmann::ordered_json& result() { return result_; }

    /// `<out>/run.json` for directory outputs, `<out>.run.json` for files.
    void write_for_dir(const std::filesystem::path& out_dir) const;
    void write_for_file(const std::filesystem::path& out_file) const;

private:
    void write(const std::filesystem::path& path) const;

    nlohmann::ordered_json options_;
    nlohmann::ordered_json result_ = nlohmann::ordered_json::object();
    std::string name_;
};

void warn(const std::string& message);

} // namespace sharpframe::cli
