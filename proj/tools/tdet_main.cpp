#include "tdet/runner.hpp"

int main(int argc, char** argv) { return tdet::run_cli(argc, argv); }
