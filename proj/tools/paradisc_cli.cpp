#include <paradisc/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return paradisc::cli::run(argc, argv, std::cout, std::cerr); }
