#include "cli_support.hpp"

#include <sharpframe/dataset_io.hpp>

#include <chrono>
#include <ctime>
#include <iostream>

#ifndef SHARPFRAME_VERSION
#define SHARPFRAME_VERSION "unknown"
#endif

namespace sharpframe::cli {

namespace fs = std::filesystem;

fs::path frames_dir(const fs::path& dir, const char* sub) {
    if (is_dataset_dir(dir) && fs::is_directory(dir / sub)) return dir / sub;
    return dir;
}

RunRecord::RunRecord(const CLI::App& command, std::string name) : name_(std::move(name)) {
    options_ = nlohmann::ordered_json::object();
    std::vector<const CLI::Option*> opts;
    for (const CLI::App* app = command.get_parent(); app; app = app->get_parent()) {
        for (const CLI::Option* opt : app->get_options()) opts.push_back(opt);
    }
    for (const CLI::Option* opt : command.get_options()) opts.push_back(opt);
    for (const CLI::Option* opt : opts) {
        const std::string key = opt->get_single_name();
        if (key == "help" || key == "config" || key == "version") continue;
        if (opt->count() > 0) {
            const auto& values = opt->results();
            if (opt->get_type_size() == 0) {
                options_[key] = true;
            } else if (values.size() == 1 && opt->get_expected_max() <= 1) {
                options_[key] = values.front();
            } else {
                options_[key] = values;
            }
        } else if (!opt->get_default_str().empty()) {
            options_[key] = opt->get_default_str();
        }
    }
}

void RunRecord::write_for_dir(const fs::path& out_dir) const { write(out_dir / "run.json"); }

void RunRecord::write_for_file(const fs::path& out_file) const {
    fs::path p = out_file;
    p += ".run.json";
    write(p);
}

void RunRecord::write(const fs::path& path) const {
    nlohmann::ordered_json j;
    j["tool"] = "sharpframe";
    j["version"] = SHARPFRAME_VERSION;
    j["command"] = name_;
    j["options"] = options_;
    j["result"] = result_;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp"] = stamp;
    write_text_file(path, j.dump(2) + "\n");
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

} // namespace sharpframe::cli
