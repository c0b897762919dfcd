#include "coquasi/cli.hpp"

int main(int argc, char** argv) { return coquasi::cli::run(argc, argv); }
