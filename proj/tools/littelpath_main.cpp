#include "littelpath/rootsys.hpp"
int main() { return 0; }
