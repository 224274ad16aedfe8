#include "curvforge/cli/commands.hpp"

int main(int argc, char** argv) { return curvforge::cli::run(argc, argv); }
