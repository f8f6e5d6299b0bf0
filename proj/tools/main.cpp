#include "twsched/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return twsched::run_cli(argc, argv, std::cout, std::cerr);
}
