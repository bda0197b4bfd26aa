#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "jtwo/verify.hpp"

#include <iostream>

TEST_CASE("acceptance criteria")
{
    jtwo::VerifyOptions opt;
    opt.max_degree = 600;
    opt.product_degree = 900;
    auto cs = jtwo::run_acceptance(data_path(), opt);
    std::cout << jtwo::render_criteria(cs);
    for (const auto& c : cs) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
}
