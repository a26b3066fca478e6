#include "gch/cli.hpp"

int main(int argc, char** argv) { return gch::run_cli(argc, argv); }
