#include "anchorfix/cli.hpp"

int main(int argc, char** argv) { return anchorfix::run_cli(argc, argv); }
