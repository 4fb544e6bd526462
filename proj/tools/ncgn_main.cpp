#include <iostream>

#include "ncgn/cli.hpp"

int main(int argc, char** argv) {
    return ncgn::run_cli(argc, argv, std::cout, std::cerr);
}
