#include "wolfes/cli.hpp"

int main(int argc, char** argv) { return wolfes::run_cli(argc, argv); }
