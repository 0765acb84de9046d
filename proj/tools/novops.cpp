#include "novops/cli.hpp"

int main(int argc, char **argv) { return novops::cli::run(argc, argv); }
