#include <iostream>
#include <string>
#include <vector>

#include "trialbandit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return trialbandit::cli_dispatch(args, std::cout, std::cerr);
}
