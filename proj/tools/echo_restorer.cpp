// Minimal external restorer: copies --current to --out. Used to exercise the
// subprocess protocol. `--fail` exits with status 3 after a message on stderr.
#include <cstring>
#include <filesystem>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::string current, out;
    bool fail = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--fail") {
            fail = true;
        } else if (i + 1 < argc && (arg == "--current" || arg == "--prev" || arg == "--next" || arg == "--sharp" ||
                                    arg == "--out")) {
            if (arg == "--current") current = argv[i + 1];
            if (arg == "--out") out = argv[i + 1];
            ++i;
        } else {
            std::cerr << "echo_restorer: unexpected argument " << arg << '\n';
            return 2;
        }
    }
    if (fail) {
        std::cerr << "echo_restorer: failing on request\n";
        return 3;
    }
    if (current.empty() || out.empty()) {
        std::cerr << "echo_restorer: --current and --out are required\n";
        return 2;
    }
    std::error_code ec;
    std::filesystem::copy_file(current, out, std::filesystem::copy_options::overwrite_existing, ec);
    if (ec) {
        std::cerr << "echo_restorer: " << ec.message() << '\n';
        return 1;
    }
    return 0;
}
