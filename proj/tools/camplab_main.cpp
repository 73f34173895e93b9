#include "camplab/cli.hpp"

int main(int argc, char** argv) { return camplab::run_cli(argc, argv); }
