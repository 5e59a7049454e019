#include <iostream>

#include "rfprog_cli.hpp"

int main(int argc, char** argv) {
    return rfprog::cli::dispatch(argc, argv, std::cout, std::cerr);
}
