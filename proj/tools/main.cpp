#include "quatmetric/cli.hpp"

int main(int argc, char** argv) { return quatmetric::run_cli(argc, argv); }
