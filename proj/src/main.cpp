#include "nodal/cli.hpp"

int main(int argc, char** argv) { return nodal::run_cli(argc, argv); }
