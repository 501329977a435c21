#define CATCH_CONFIG_NO_POSIX_SIGNALS
#include <catch2/catch_amalgamated.hpp>
#include <catch2/catch_amalgamated.cpp>
