#include <sharpframe/restore.hpp>

#include <sharpframe/dataset_io.hpp>
#include <sharpframe/error.hpp>
#include <sharpframe/png_io.hpp>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace sharpframe {

namespace fs = std::filesystem;

namespace {

class ScratchDir {
public:
    explicit ScratchDir(const fs::path& parent) {
        static std::atomic<unsigned> counter{0};
        const fs::path base = parent.empty() ? fs::temp_directory_path() : parent;
        fs::create_directories(base);
        for (int attempt = 0; attempt < 100; ++attempt) {
            fs::path candidate = base / ("sharpframe-ext-" + std::to_string(::getpid()) + "-" +
                                         std::to_string(counter.fetch_add(1)));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw IoError("cannot create scratch directory under " + base.string());
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string tail(const std::string& text, std::size_t max_chars = 2000) {
    if (text.size() <= max_chars) return text;
    return "..." + text.substr(text.size() - max_chars);
}

std::string read_log(const fs::path& path) {
    try {
        std::string s = read_text_file(path);
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
        return tail(s);
    } catch (const Error&) {
        return {};
    }
}

} // namespace

Frame run_external_restorer(const ExternalRestorer& restorer, const Triplet& x, const Frame* sharp) {
    if (restorer.command.empty()) throw ParameterError("external restorer: no command configured");

    ScratchDir scratch(restorer.work_dir);
    const fs::path dir = scratch.path();
    const fs::path current = dir / "current.png";
    const fs::path prev = dir / "prev.png";
    const fs::path next = dir / "next.png";
    const fs::path sharp_png = dir / "sharp.png";
    const fs::path out = dir / "out.png";
    const fs::path log = dir / "stderr.log";

    // 16 bits keep the hand-off lossless for 8- and 16-bit sources alike.
    write_png(current, x.current, BitDepth::u16);
    write_png(prev, x.previous, BitDepth::u16);
    write_png(next, x.next, BitDepth::u16);
    if (sharp) write_png(sharp_png, *sharp, BitDepth::u16);

    std::vector<std::string> argv_s;
    argv_s.push_back(restorer.command);
    argv_s.insert(argv_s.end(), restorer.args.begin(), restorer.args.end());
    for (auto [flag, path] : {std::pair{"--current", &current}, {"--prev", &prev}, {"--next", &next}}) {
        argv_s.emplace_back(flag);
        argv_s.push_back(path->string());
    }
    if (sharp) {
        argv_s.emplace_back("--sharp");
        argv_s.push_back(sharp_png.string());
    }
    argv_s.emplace_back("--out");
    argv_s.push_back(out.string());

    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());
    argv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
    posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);

    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw BackendError("external restorer '" + restorer.command + "' could not be started: " + std::strerror(rc));
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) throw BackendError("external restorer: waitpid failed: " + std::string(std::strerror(errno)));
    }
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        std::string what = WIFEXITED(status) ? "exited with status " + std::to_string(WEXITSTATUS(status))
                                             : "was killed by signal " + std::to_string(WTERMSIG(status));
        const std::string diag = read_log(log);
        if (!diag.empty()) what += "; stderr: " + diag;
        throw BackendError("external restorer '" + restorer.command + "' " + what);
    }
    if (!fs::is_regular_file(out)) {
        throw BackendError("external restorer '" + restorer.command + "' exited 0 but wrote no output frame");
    }
    try {
        return read_png(out).frame;
    } catch (const Error& e) {
        throw BackendError("external restorer produced an unreadable frame: " + std::string(e.what()));
    }
}

} // namespace sharpframe
