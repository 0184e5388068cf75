#include "unwindr/cli.hpp"

int main(int argc, char** argv) { return unwindr::cli::run(argc, argv); }
