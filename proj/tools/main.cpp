#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return conelab::cli::main_entry(argc, argv, std::cout, std::cerr); }
