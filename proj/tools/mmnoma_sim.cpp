#include <iostream>
#include <string>
#include <vector>

#include "mmnoma/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mmnoma::run_cli(args, std::cout, std::cerr);
}
