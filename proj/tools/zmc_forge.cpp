#include <zmc/cli.hpp>

int main(int argc, char** argv) { return zmc::cli_main(argc, argv); }
