#include <cstdio>

int main() {
  std::puts("linktwin: CLI under construction");
  return 0;
}
