#include <hullsep/cli.hpp>

int main(int argc, char** argv) { return hullsep::cli::run_cli(argc, argv); }
