#include <iostream>

#include "mgb/cli.hpp"

int main(int argc, char** argv) {
    return mgb::cli::run(argc, argv, std::cout, std::cerr);
}
