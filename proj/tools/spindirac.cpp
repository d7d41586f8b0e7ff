#include <iostream>

#include "spindirac/cli.hpp"

int main(int argc, char** argv)
{
    return spindirac::cli::run(argc, argv, std::cout, std::cerr);
}
