#include "rlnc/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return rlnc::cli::run(argc, argv, std::cout, std::cerr);
}
