#include <iostream>
#include <string>
#include <vector>

#include "bdft/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bdft::dispatch(args, std::cout, std::cerr);
}
