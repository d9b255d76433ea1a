#include <iostream>

#include "modsys/cli.hpp"

int main(int argc, char** argv)
{
    return modsys::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
