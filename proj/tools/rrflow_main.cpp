#include "rrflow/cli.hpp"

int main(int argc, char** argv) { return rrflow::run(argc, argv); }
