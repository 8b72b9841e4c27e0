#include "troph/cli.hpp"

int main(int argc, char** argv) { return troph::run_command(argc, argv); }
