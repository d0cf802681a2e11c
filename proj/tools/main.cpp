#include "hls/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return hls::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
