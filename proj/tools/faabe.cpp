#include <faabe/cli.hpp>

int main(int argc, char** argv) { return faabe::cli::run_cli(argc, argv); }
