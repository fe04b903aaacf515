#include <iostream>

#include "nokequal/cli.hpp"

int main(int argc, char** argv)
{
    return nokequal::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
