#include <cstdio>

#include "qmetro/acceptance.hpp"

int main() {
    int failures = 0;
    for (const auto &r : qmetro::run_acceptance()) {
        std::printf("%s\n", qmetro::format_result(r).c_str());
        if (!r.informational && !r.passed) {
            ++failures;
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
