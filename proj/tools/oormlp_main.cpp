#include "cli.hpp"

int main(int argc, char** argv) { return oormlp::cli::run(argc, argv); }
