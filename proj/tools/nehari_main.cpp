#include "nehari/cli.hpp"

int main(int argc, char** argv) { return nehari::cli::main(argc, argv); }
