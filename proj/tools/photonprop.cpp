#include "photonprop/cli.hpp"

int main(int argc, char** argv) { return photonprop::cli_main(argc, argv); }
