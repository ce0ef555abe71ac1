#include "cli.hpp"

int main(int argc, char** argv) { return dpbb::run_cli(argc, argv); }
