#include "projposet/cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return projposet::run_cli(argc, argv, std::cout, std::cerr);
}
