#include <cstdio>
int main() { std::puts("driftlab"); return 0; }
