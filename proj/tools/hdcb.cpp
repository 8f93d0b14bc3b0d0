#include "hdc/cli.hpp"

int main(int argc, char** argv) { return hdc::cli::run(argc, argv); }
