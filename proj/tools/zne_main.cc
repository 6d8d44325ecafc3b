#include <iostream>

#include "zne/cli.h"

int main(int argc, char **argv) {
    return zne::cli::run(argc, argv, std::cout, std::cerr);
}
