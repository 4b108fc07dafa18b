#include <iostream>

int main() {
  std::cerr << "cli not implemented yet" << std::endl;
  return 1;
}
