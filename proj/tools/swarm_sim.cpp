#include <iostream>

#include "swarmform/cli_io.hpp"

int main(int argc, char** argv) {
    return swarmform::cli_main(argc, argv, std::cout, std::cerr);
}
