#pragma once

#include "fixtures.hpp"
#include "pmatch/error.hpp"

#include <doctest.h>

namespace testing {

inline pmatch::Errc error_code(auto&& fn) {
    try {
        fn();
    } catch (const pmatch::Error& e) {
        return e.code();
    }
    FAIL("expected a pmatch::Error");
    return pmatch::Errc::ParseError;
}

}  // namespace testing
