#include "qumeas/cli.hpp"

int main(int argc, char** argv) { return qumeas::cli::run_main(argc, argv); }
