#include "levycouple/cli.hpp"

int main(int argc, char** argv) { return lc::run_cli(argc, argv); }
