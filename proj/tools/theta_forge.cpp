#include "thetaforge/cli.hpp"

int main(int argc, char** argv) { return thetaforge::cli::run(argc, argv); }
