#include "steindpp/cli.hpp"

int main(int argc, char** argv) { return steindpp::dispatch(argc, argv); }
