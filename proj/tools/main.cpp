#include <iostream>

#include "cpc/cli_driver.hpp"

int main(int argc, char** argv) {
  return cpc::cli_main(argc, argv, std::cout, std::cerr);
}
