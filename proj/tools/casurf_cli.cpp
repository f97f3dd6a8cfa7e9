#include <iostream>

#include "casurf/cli.hpp"

int main(int argc, char** argv) {
    try {
        return casurf::run_cli(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return casurf::kExitUsage;
    }
}
