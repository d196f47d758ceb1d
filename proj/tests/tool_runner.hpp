// Helper for driving the installed CLI binary from tests.
#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#ifndef CCSTACK_TOOL_PATH
#error "CCSTACK_TOOL_PATH must name the ccstack binary"
#endif

namespace tool {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// Run the CLI with optional environment assignments prefixed (e.g.
/// "CCSTACK_THREADS=2"). stderr is discarded; stdout is captured.
inline RunResult run(const std::string& args, const std::string& env = "") {
    std::string command;
    if (!env.empty()) {
        command += "env " + env + " ";
    }
    command += std::string(CCSTACK_TOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    RunResult result;
    if (pipe == nullptr) {
        return result;
    }
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    if (status >= 0 && WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ccstack_cli_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace tool
