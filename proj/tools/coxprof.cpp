#include <cstdlib>
#include <iostream>

#include "coxprof/cli.hpp"

int main(int argc, char** argv) {
  try {
    return coxprof::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const coxprof::OracleDisagreement& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    std::abort();
  }
}
