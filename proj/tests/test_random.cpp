#include <rbmlab/random.hpp>

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

using rbmlab::RngStream;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(rbmlab::philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(rbmlab::philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(rbmlab::philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of seed and id") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        same_c += x == c.next_u64();
        same_d += x == d.next_u64();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("uniform, normal and exponential moments") {
    RngStream s(2024, 0);
    const int n = 400000;
    double su = 0, su2 = 0, sn = 0, sn2 = 0, sn3 = 0, sn4 = 0, se = 0;
    double umin = 1, umax = 0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        su += u;
        su2 += u * u;
        const double z = s.normal();
        sn += z;
        sn2 += z * z;
        sn3 += z * z * z;
        sn4 += z * z * z * z;
        se += s.exponential(2.0);
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    CHECK(std::fabs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::fabs(su2 / n - 1.0 / 3.0) < 5 * std::sqrt(4.0 / 45 / n));
    CHECK(std::fabs(sn / n) < 5 / std::sqrt(n));
    CHECK(std::fabs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
    CHECK(std::fabs(sn3 / n) < 5 * std::sqrt(15.0 / n));
    CHECK(std::fabs(sn4 / n - 3.0) < 5 * std::sqrt(96.0 / n));
    CHECK(std::fabs(se / n - 0.5) < 5 * 0.5 / std::sqrt(n));
}

TEST_CASE("neighbouring streams are uncorrelated") {
    const int n = 200000;
    RngStream a(5, 0), b(5, 1);
    double sab = 0;
    for (int i = 0; i < n; ++i) sab += a.normal() * b.normal();
    CHECK(std::fabs(sab / n) < 5 / std::sqrt(n));
}

TEST_CASE("mix_seed separates labels") {
    CHECK(rbmlab::mix_seed(1, 0) != rbmlab::mix_seed(1, 1));
    CHECK(rbmlab::mix_seed(1, 0) != rbmlab::mix_seed(2, 0));
    CHECK(rbmlab::mix_seed(9, 3) == rbmlab::mix_seed(9, 3));
}
