#include <iostream>

#include "pvg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pvg::run(args, std::cout, std::cerr);
}
