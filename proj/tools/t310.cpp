#include "t310/cli.hpp"

int main(int argc, char** argv) { return t310::cli::run_main(argc, argv); }
