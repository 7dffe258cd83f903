#include "l2chi/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return l2chi::run_main(argc, argv, std::cout, std::cerr);
}
