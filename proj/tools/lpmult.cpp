#include <iostream>

#include "lpmult/cli.hpp"

int main(int argc, char** argv)
{
    return lpmult::run_cli(argc, argv, std::cout, std::cerr);
}
