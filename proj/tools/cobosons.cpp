#include "cobosons/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cobosons::cli::run(argc, argv, std::cout, std::cerr);
}
