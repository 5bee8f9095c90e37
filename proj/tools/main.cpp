#include <cstdio>
int main() { std::puts("binfar placeholder"); return 0; }
