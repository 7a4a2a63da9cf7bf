#include "twistmeans/cli.hpp"

int main(int argc, char** argv) { return twistmeans::cli::run(argc, argv); }
