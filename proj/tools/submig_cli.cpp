#include "submig/cli.hpp"

int main(int argc, char** argv) { return submig::cli::run(argc, argv); }
