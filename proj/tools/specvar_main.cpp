#include "specvar/cli.hpp"

int main(int argc, char** argv) { return specvar::cli::run(argc, argv); }
