#include "gammak/cli.hpp"

int main(int argc, char** argv) { return gammak::cli_main(argc, argv); }
