#include "fourman/cli.hpp"

int main(int argc, char** argv) { return fourman::run_cli(argc, argv); }
