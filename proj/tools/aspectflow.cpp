#include "aspectflow/cli.hpp"

int main(int argc, char** argv) { return aspectflow::cli::run(argc, argv); }
