#include "commands.hpp"

int main(int argc, char** argv) { return hfgas::cli::run(argc, argv); }
