#include "sentalpha/cli.hpp"

int main(int argc, char** argv) { return sentalpha::cli::run(argc, argv); }
