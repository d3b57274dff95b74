#include "msroute/cli.hpp"

int main(int argc, char** argv) { return msroute::run_cli(argc, argv); }
