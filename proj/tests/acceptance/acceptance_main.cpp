#include <iostream>
#include <thread>

#include "cli/validation.hpp"

int main() {
    loccmc::cli::ValidationOptions opts;
    opts.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto results = loccmc::cli::run_validation(opts, std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << (results.size() - failed) << "/" << results.size() << " acceptance criteria passed\n";
    return failed == 0 ? 0 : 1;
}
