#include <gwkit/graph.hpp>
int main() { return 0; }
