#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mlrgg/rng.hpp"

using mlrgg::RngStream;

TEST_CASE("identical keys replay identical sequences") {
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different keys diverge") {
    RngStream a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("substream derivation ignores the parent's position") {
    RngStream parent(7);
    RngStream child_before = parent.substream(3);
    parent.next_u64();
    parent.next_u64();
    RngStream child_after = parent.substream(3);
    CHECK(child_before.key() == child_after.key());
    CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("sibling substreams are distinct") {
    RngStream parent(7);
    std::vector<std::uint64_t> keys;
    for (std::uint64_t i = 0; i < 64; ++i)
        keys.push_back(parent.substream(i).key());
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            CHECK(keys[i] != keys[j]);
}

TEST_CASE("unit draws live in [0,1) with the right mean") {
    RngStream s(123);
    const int n = 100000;
    double sum = 0.0;
    int below_quarter = 0;
    for (int i = 0; i < n; ++i) {
        const double x = s.next_unit();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        sum += x;
        if (x < 0.25) ++below_quarter;
    }
    CHECK(std::fabs(sum / n - 0.5) < 0.005);
    CHECK(std::fabs(below_quarter / static_cast<double>(n) - 0.25) < 0.006);
}

TEST_CASE("bounded draws stay in range and spread evenly") {
    RngStream s(9000);
    CHECK(s.next_below(0) == 0);
    CHECK(s.next_below(1) == 0);
    const int n = 80000;
    std::vector<int> buckets(8, 0);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t x = s.next_below(8);
        REQUIRE(x < 8);
        ++buckets[static_cast<std::size_t>(x)];
    }
    for (const int count : buckets)
        CHECK(std::fabs(count - n / 8.0) < 450.0);
}
