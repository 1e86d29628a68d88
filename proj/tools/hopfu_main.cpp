#include <iostream>

#include "hopfu/cli.hpp"

int main(int argc, char** argv) {
    return hopfu::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
