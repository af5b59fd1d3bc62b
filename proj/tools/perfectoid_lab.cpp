#include <iostream>

#include "perfectoid/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = perfectoid::cli::run(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
