#include <iostream>

#include "tcpl/cli/cli.hpp"

int main(int argc, char** argv) {
    return tcpl::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
