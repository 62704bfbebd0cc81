#include "gps/cli.hpp"

int main(int argc, char** argv) { return gps::cli::run(argc, argv); }
