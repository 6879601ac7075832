#include "radhf/cli.hpp"

int main(int argc, char **argv) { return radhf::cli::run(argc, argv); }
