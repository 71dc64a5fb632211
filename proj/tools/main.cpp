#include <exception>
#include <iostream>

#include "conekit/cli.hpp"

int main(int argc, char** argv) {
  try {
    return conekit::run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (...) {
    std::cerr << "internal error\n";
    return 70;
  }
}
