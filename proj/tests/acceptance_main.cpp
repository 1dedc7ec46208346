#include "virapath/suites.hpp"

#include <iostream>

int main() {
    const int threads = virapath::default_thread_count();
    const bool ok = virapath::run_acceptance(std::cout, threads);
    return ok ? 0 : 1;
}
