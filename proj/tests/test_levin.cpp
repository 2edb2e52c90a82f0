#include <stdexcept>
#include <string>

#include "doctest.h"
#include "eplab/levin.hpp"

using namespace eplab::levin;

TEST_CASE("elias gamma and delta known codewords") {
    CHECK(elias_gamma(1) == "1");
    CHECK(elias_gamma(2) == "010");
    CHECK(elias_gamma(3) == "011");
    CHECK(elias_gamma(4) == "00100");
    CHECK(elias_gamma(19) == "000010011");

    CHECK(elias_delta(1) == "1");
    CHECK(elias_delta(2) == "0100");
    CHECK(elias_delta(3) == "0101");
    CHECK(elias_delta(4) == "01100");
    CHECK(elias_delta(10) == "00100010");

    for (uint64_t m : {1ull, 2ull, 5ull, 100ull, 999983ull}) {
        CHECK(static_cast<int>(elias_gamma(m).size()) == gamma_length(m));
        CHECK(static_cast<int>(elias_delta(m).size()) == delta_length(m));
    }
}

TEST_CASE("U1 decode: literal programs") {
    Decoded empty = decode(MachineId::U1, "01");
    REQUIRE(empty.ok);
    CHECK(empty.output == "");
    CHECK(empty.consumed == 2);

    Decoded one = decode(MachineId::U1, "00101");
    REQUIRE(one.ok);
    CHECK(one.output == "1");

    // literal "1101": mode 0, gamma(5) = 00101, payload 1101
    Decoded word = decode(MachineId::U1, "0001011101");
    REQUIRE(word.ok);
    CHECK(word.output == "1101");
}

TEST_CASE("U1 decode: repeat programs") {
    Decoded rep = decode(MachineId::U1, "10100101");
    REQUIRE(rep.ok);
    CHECK(rep.output == "11");  // k = 2 of block "1"

    // k = 3, block "01": 1 gamma(3)=011 gamma(3)=011 block 01
    Decoded rep2 = decode(MachineId::U1, "101101101");
    REQUIRE(rep2.ok);
    CHECK(rep2.output == "010101");
}

TEST_CASE("U1 decode error taxonomy") {
    CHECK(decode(MachineId::U1, "").error == DecodeError::incomplete);
    CHECK(decode(MachineId::U1, "0").error == DecodeError::incomplete);
    CHECK(decode(MachineId::U1, "001").error == DecodeError::incomplete);
    CHECK(decode(MachineId::U1, "0010").error == DecodeError::incomplete);
    CHECK(decode(MachineId::U1, "011").error == DecodeError::trailing);
    // repeat with an empty block (k = 1, len = 0) is not a program
    CHECK(decode(MachineId::U1, "111").error == DecodeError::malformed);
    CHECK_THROWS_AS(decode(MachineId::U1, "0x"), std::invalid_argument);
}

TEST_CASE("U0 accepts trailing bits and reports consumed length") {
    CHECK(decode(MachineId::U1, "0110").error == DecodeError::trailing);
    Decoded d = decode(MachineId::U0, "0110");
    REQUIRE(d.ok);
    CHECK(d.output == "");
    CHECK(d.consumed == 2);
    // invalid prefixes stay invalid even with trailing freedom
    CHECK_FALSE(decode(MachineId::U0, "111111").ok);
}

TEST_CASE("U2 decode: swapped modes with delta codes") {
    // literal mode bit is 1 on U2; delta(1) = 1 so "11" outputs ""
    Decoded empty = decode(MachineId::U2, "11");
    REQUIRE(empty.ok);
    CHECK(empty.output == "");

    // literal "0": 1 delta(2)=0100 payload 0
    Decoded zero = decode(MachineId::U2, "101000");
    REQUIRE(zero.ok);
    CHECK(zero.output == "0");

    // repeat k = 2 of "1": 0 delta(2)=0100 delta(2)=0100 block 1
    Decoded rep = decode(MachineId::U2, "0010001001");
    REQUIRE(rep.ok);
    CHECK(rep.output == "11");

    CHECK(decode(MachineId::U2, "1").error == DecodeError::incomplete);
    CHECK(decode(MachineId::U2, "011").error == DecodeError::malformed);
}

TEST_CASE("decode round-trips every structurally valid program") {
    // literal programs for a few payloads, via the documented format
    for (const std::string payload : {"", "1", "01", "10110"}) {
        std::string p = "0";
        append_gamma(p, payload.size() + 1);
        p += payload;
        Decoded d = decode(MachineId::U1, p);
        REQUIRE(d.ok);
        CHECK(d.output == payload);

        std::string q = "1";
        append_delta(q, payload.size() + 1);
        q += payload;
        Decoded d2 = decode(MachineId::U2, q);
        REQUIRE(d2.ok);
        CHECK(d2.output == payload);
    }
}

TEST_CASE("wider literal payloads round-trip on both machines") {
    std::string payload = "1100101011";  // 10 bits
    std::string u1 = "0";
    append_gamma(u1, payload.size() + 1);
    u1 += payload;
    CHECK(static_cast<int>(u1.size()) == 1 + gamma_length(11) + 10);
    Decoded d1 = decode(MachineId::U1, u1);
    REQUIRE(d1.ok);
    CHECK(d1.output == payload);

    std::string u2 = "1";
    append_delta(u2, payload.size() + 1);
    u2 += payload;
    CHECK(static_cast<int>(u2.size()) == 1 + delta_length(11) + 10);
    Decoded d2 = decode(MachineId::U2, u2);
    REQUIRE(d2.ok);
    CHECK(d2.output == payload);
}

TEST_CASE("prefix-freeness holds exhaustively to length 14") {
    CHECK(verify_prefix_free(MachineId::U1, 14));
    CHECK(verify_prefix_free(MachineId::U2, 14));
}

TEST_CASE("toy_complexity closed form on known strings") {
    CHECK(toy_complexity(MachineId::U1, "") == 2);
    CHECK(toy_complexity(MachineId::U2, "") == 2);
    CHECK(toy_complexity(MachineId::U1, "1") == 5);
    CHECK(toy_complexity(MachineId::U1, "0101") == 9);  // repeat k=2 beats literal 10
    CHECK_THROWS_AS(toy_complexity(MachineId::U0, "1"), std::invalid_argument);
}

TEST_CASE("toy_complexity equals brute force up to length 7 on both machines") {
    for (MachineId m : {MachineId::U1, MachineId::U2}) {
        auto oracle = bruteforce_min_lengths(m, 16);
        for (int len = 0; len <= 7; ++len) {
            for (uint64_t v = 0; v < (uint64_t(1) << len); ++v) {
                std::string x;
                for (int i = len - 1; i >= 0; --i) x += ((v >> i) & 1) ? '1' : '0';
                auto it = oracle.find(x);
                REQUIRE(it != oracle.end());
                REQUIRE(toy_complexity(m, x) == it->second);
            }
        }
    }
}

TEST_CASE("toy_complexity_bruteforce respects its cutoff") {
    CHECK(toy_complexity_bruteforce(MachineId::U1, "", 2) == 2);
    CHECK(toy_complexity_bruteforce(MachineId::U1, "0101", 12) == 9);
    // 20-bit string: literal needs >= 21 bits, repeat needs >= 10
    std::string twenty(20, '0');
    CHECK_FALSE(toy_complexity_bruteforce(MachineId::U1, twenty, 8).has_value());
    CHECK_THROWS_AS(toy_complexity_bruteforce(MachineId::U1, "1", 27), std::length_error);
}

TEST_CASE("counting bound: literal program always exists") {
    for (int len = 0; len <= 12; ++len) {
        for (uint64_t v = 0; v < (uint64_t(1) << len); v += (len > 6 ? 37 : 1)) {
            std::string x;
            for (int i = len - 1; i >= 0; --i) x += ((v >> i) & 1) ? '1' : '0';
            CHECK(toy_complexity(MachineId::U1, x) <=
                  static_cast<int>(x.size()) + gamma_length(x.size() + 1) + 1);
        }
    }
}

TEST_CASE("enumerate_mass exact values at tiny cutoffs") {
    UniversalMassEstimate l2 = enumerate_mass(MachineId::U1, 2);
    REQUIRE(l2.numerators.size() == 1);
    CHECK(l2.numerators.at("") == 1);  // 1/4
    CHECK(l2.mass_of("") == Dyadic{1, 2});

    // at cutoff 5 the programs are "01" (2 bits), "00101"/"00100" (5 bits)
    UniversalMassEstimate l5 = enumerate_mass(MachineId::U1, 5);
    CHECK(l5.mass_of("") == Dyadic{8, 5});
    CHECK(l5.mass_of("0") == Dyadic{1, 5});
    CHECK(l5.mass_of("1") == Dyadic{1, 5});
}

TEST_CASE("enumerate_mass agrees with the raw-scan oracle") {
    for (MachineId m : {MachineId::U1, MachineId::U2, MachineId::U0}) {
        for (int cutoff : {2, 5, 9, 12}) {
            UniversalMassEstimate fast = enumerate_mass(m, cutoff);
            UniversalMassEstimate slow = enumerate_mass_bruteforce(m, cutoff);
            REQUIRE(fast.numerators == slow.numerators);
        }
    }
}

TEST_CASE("kraft inequality holds exactly at every cutoff on U1 and U2") {
    for (MachineId m : {MachineId::U1, MachineId::U2}) {
        uint64_t prev_total_scaled = 0;
        for (int cutoff = 1; cutoff <= 16; ++cutoff) {
            UniversalMassEstimate est = enumerate_mass(m, cutoff);
            CHECK(est.kraft_holds());
            // total mass is nondecreasing in the cutoff
            uint64_t scaled = est.total_numerator() << (16 - cutoff);
            CHECK(scaled >= prev_total_scaled);
            prev_total_scaled = scaled;
        }
    }
}

TEST_CASE("per-output mass is nondecreasing in the cutoff") {
    UniversalMassEstimate small = enumerate_mass(MachineId::U1, 10);
    UniversalMassEstimate large = enumerate_mass(MachineId::U1, 14);
    for (const auto& [output, num] : small.numerators) {
        Dyadic lo{num, 10};
        Dyadic hi = large.mass_of(output);
        CHECK_FALSE(hi < lo);
    }
    // "1" has the 5-bit program "00101", so its mass at 14 is at least 2^-5
    CHECK_FALSE(large.mass_of("1") < Dyadic{1, 5});
}

TEST_CASE("U0 mass violates the kraft bound once extensions pile up") {
    UniversalMassEstimate u0 = enumerate_mass(MachineId::U0, 8);
    CHECK_FALSE(u0.kraft_holds());
}

TEST_CASE("invariance gaps") {
    InvarianceReport r = invariance_gap(8);
    CHECK(r.per_x_gap.at("") == 0);  // both machines need exactly 2 bits
    CHECK(r.c_measured >= 0);
    for (int n = 0; n <= r.n_max; ++n) {
        CHECK(r.gap_by_length[n] <= r.c_measured);
    }
    for (const auto& [x, gap] : r.per_x_gap) {
        REQUIRE(std::abs(toy_complexity(MachineId::U1, x) - toy_complexity(MachineId::U2, x)) ==
                gap);
    }
    CHECK_THROWS_AS(invariance_gap(15), std::length_error);
}

TEST_CASE("U0 divergence partial sums grow linearly for the empty string") {
    // only the literal "01" outputs "" so the sum at cutoff 2+j is (j+1)/4
    for (int j = 0; j <= 6; ++j) {
        DivergenceSum s = divergence_partial_sum("", 2 + j);
        CHECK(s.any_program);
        CHECK(s.value == Dyadic{static_cast<uint64_t>(j + 1), 2});
    }
    DivergenceSum at2 = divergence_partial_sum("", 2);
    CHECK(at2.value == Dyadic{1, 2});
    DivergenceSum at3 = divergence_partial_sum("", 3);
    CHECK(at3.value == Dyadic{1, 1});  // 1/2: "01" plus extensions "010", "011"
}

TEST_CASE("U0 divergence reports zero with a flag when no program fits") {
    DivergenceSum none = divergence_partial_sum("0", 2);  // K_U1("0") = 5
    CHECK_FALSE(none.any_program);
    CHECK(none.value.num == 0);

    DivergenceSum strict_growth = divergence_partial_sum("0", 5);
    CHECK(strict_growth.any_program);
    DivergenceSum next = divergence_partial_sum("0", 6);
    CHECK(strict_growth.value < next.value);
}

TEST_CASE("U0 divergence equals the raw-scan mass for the same output") {
    for (int cutoff : {2, 3, 6, 9}) {
        UniversalMassEstimate raw = enumerate_mass_bruteforce(MachineId::U0, cutoff);
        for (const std::string x : {std::string(""), std::string("0"), std::string("11")}) {
            DivergenceSum s = divergence_partial_sum(x, cutoff);
            CHECK(s.value == raw.mass_of(x));
        }
    }
}

TEST_CASE("dyadic arithmetic") {
    Dyadic quarter{1, 2};
    Dyadic eighth{1, 3};
    CHECK(quarter + eighth == Dyadic{3, 3});
    CHECK((quarter + quarter).normalized().num == 1);
    CHECK((quarter + quarter).normalized().log2_den == 1);
    CHECK(quarter.to_double() == 0.25);
    CHECK(Dyadic{6, 4}.to_string() == "3/2^3");
    CHECK(eighth < quarter);
    CHECK_FALSE(quarter < eighth);
    CHECK(Dyadic{0, 5} == Dyadic{0, 0});
}
