#pragma once

#include <string>
#include <vector>

namespace t310::cli {

struct RunResult {
    int exit_code = 0;
    std::string report;    // JSON document
    std::string payload;   // secondary output (CNF text, CSV) when not sent to a file
};

// Exit codes: 0 success/verdict-true, 1 verdict-false, 2 usage error,
// 3 capacity/budget error.
RunResult dispatch(const std::vector<std::string>& argv);

int run_main(int argc, char** argv);

}  // namespace t310::cli
