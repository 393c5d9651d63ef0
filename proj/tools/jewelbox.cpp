#include "jewelbox/cli.hpp"

int main(int argc, char** argv) { return jewelbox::cli::run(argc, argv); }
