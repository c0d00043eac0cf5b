#include "mathieu/cli.hpp"

int main(int argc, char** argv) { return mathieu::run_cli(argc, argv); }
