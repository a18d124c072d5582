#include "doctest.h"

#include "qec/blockwise.hpp"
#include "qec/mc.hpp"
#include "qec/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace qec;

namespace {

// Tolerance for cross-implementation probability comparisons: values come
// out of sums with different association orders.
bool close_prob(double a, double b) {
    return std::abs(a - b) <= 1e-12 + 1e-8 * std::abs(b);
}

template <typename Fn>
void for_each_pattern(size_t n, Fn&& fn) {
    PauliOperator e(n);
    const uint64_t count = uint64_t{1} << (2 * n);
    for (uint64_t idx = 0; idx < count; ++idx) {
        uint64_t k = idx;
        for (size_t q = 0; q < n; ++q) {
            e.set_factor(q, static_cast<Pauli>(k & 3));
            k >>= 2;
        }
        fn(e);
    }
}

} // namespace

TEST_CASE("one level of blockwise decoding is a table lookup") {
    const auto five = StabilizerCode::five_qubit();
    const HardTable table = hard_table(five, 0.1);
    const BlockwiseDecoder decoder(ConcatenatedCode{five, 1}, table);
    for_each_pattern(5, [&](const PauliOperator& e) {
        const BlockwiseResult r = decoder.decode(e);
        const Syndrome s = five.syndrome_of(e);
        CHECK(r.estimate == table[s]);
        CHECK(r.success == (five.logical_class(e) == table[s]));
    });
}

TEST_CASE("every single-qubit error is corrected at two levels") {
    const auto five = StabilizerCode::five_qubit();
    const ConcatenatedCode cc{five, 2};
    const BlockwiseDecoder decoder(cc, hard_table(five, 0.1));
    const Extractor extractor(cc);
    for (size_t q = 0; q < 25; ++q) {
        for (const Pauli f : {Pauli::X, Pauli::Y, Pauli::Z}) {
            PauliOperator e(25);
            e.set_factor(q, f);
            const BlockwiseResult r = decoder.decode(e);
            CHECK(r.success);
            CHECK(r.estimate == extractor.extract(e).classes.top());
            CHECK(r.residuals.back().is_identity());
        }
    }
}

TEST_CASE("decode composes the residual with the true class") {
    const auto five = StabilizerCode::five_qubit();
    const ConcatenatedCode cc{five, 2};
    const BlockwiseDecoder decoder(cc, hard_table(five, 0.1));
    const Extractor extractor(cc);
    RngStream rng(654);
    for (int trial = 0; trial < 100; ++trial) {
        PauliOperator e(25);
        for (size_t q = 0; q < 25; ++q) e.set_factor(q, static_cast<Pauli>(rng.next() & 3));
        const BlockwiseResult r = decoder.decode(e);
        REQUIRE(r.residuals.size() == 2);
        CHECK(r.residuals[0].num_qubits() == 5);
        CHECK(r.residuals[1].num_qubits() == 1);
        const LogicalClass truth = extractor.extract(e).classes.top();
        const LogicalClass residual_class = r.residuals.back().factor_at(0);
        CHECK(r.estimate == residual_class * truth);
        CHECK(r.success == (residual_class == Pauli::I));
        CHECK(r.success == (r.estimate == truth));
    }
}

TEST_CASE("decoding ignores stabilizer components of the error") {
    const auto five = StabilizerCode::five_qubit();
    const ConcatenatedCode cc{five, 2};
    const BlockwiseDecoder decoder(cc, hard_table(five, 0.1));
    const auto group = stabilizer_group(five);
    RngStream rng(9001);
    for (int trial = 0; trial < 60; ++trial) {
        PauliOperator e(25);
        for (size_t q = 0; q < 25; ++q) e.set_factor(q, static_cast<Pauli>(rng.next() & 3));
        // Embed a random bottom-layer stabilizer element at a random block.
        const auto& g = group[rng.next() % group.size()];
        const size_t block = rng.next() % 5;
        PauliOperator embedded(25);
        for (size_t i = 0; i < 5; ++i) embedded.set_factor(block * 5 + i, g.factor_at(i));
        const BlockwiseResult a = decoder.decode(e);
        const BlockwiseResult b = decoder.decode(e * embedded);
        CHECK(a.estimate == b.estimate);
        CHECK(a.success == b.success);
    }
}

TEST_CASE("blockwise decoder rejects mismatched inputs") {
    const auto five = StabilizerCode::five_qubit();
    const auto rep3 = StabilizerCode::repetition3();
    CHECK_THROWS_AS(BlockwiseDecoder(ConcatenatedCode{five, 2}, hard_table(rep3, 0.1)),
                    std::invalid_argument);
    const BlockwiseDecoder decoder(ConcatenatedCode{five, 2}, hard_table(five, 0.1));
    CHECK_THROWS_AS(decoder.decode(PauliOperator(5)), std::invalid_argument);
}

TEST_CASE("frozen effective-channel recursion values") {
    const auto five = StabilizerCode::five_qubit();
    const auto steane = StabilizerCode::steane();

    const struct {
        const StabilizerCode* code;
        double p;
        std::vector<double> p_e;
    } cases[] = {
        {&five, 0.05, {0.02233185185185249, 0.004744019004320532, 0.00022269354419779397,
                       4.956788369758769e-07}},
        {&five, 0.10, {0.07950814814814766, 0.05274161936290289, 0.02469218195932299,
                       0.00576904993081806}},
        {&five, 0.13, {0.1250792685037041, 0.11716899511611767, 0.10478583931385077,
                       0.08631624195996357}},
        {&steane, 0.05, {0.03436103593964024, 0.014446502260586191, 0.002330173944289138,
                         5.765604545748815e-05}},
        {&steane, 0.10, {0.11542201591220891, 0.12848951518693852, 0.1408860363363681,
                         0.15736183772393952}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.code->name);
        CAPTURE(c.p);
        const HardTable table = hard_table(*c.code, c.p);
        const auto levels = exact_blockwise_recursion(*c.code, c.p, 4, table);
        REQUIRE(levels.size() == 4);
        for (int m = 0; m < 4; ++m) {
            CAPTURE(m);
            CHECK(close_prob(levels[size_t(m)].p_error, c.p_e[size_t(m)]));
            CHECK(close_prob(levels[size_t(m)].channel.total(), 1.0));
            CHECK(close_prob(1.0 - levels[size_t(m)].channel[Pauli::I],
                             levels[size_t(m)].p_error));
        }
    }

    // The five-qubit curves collapse below threshold and blow up above it.
    const HardTable t15 = hard_table(five, 0.15);
    const auto above = exact_blockwise_recursion(five, 0.15, 6, t15);
    for (size_t m = 1; m < above.size(); ++m)
        CHECK(above[m].p_error > above[m - 1].p_error);
}

TEST_CASE("frozen repetition-code recursion values") {
    const auto rep3 = StabilizerCode::repetition3();
    const HardTable table = hard_table(rep3, 0.1);
    const auto levels = exact_blockwise_recursion(rep3, 0.1, 2, table);
    REQUIRE(levels.size() == 2);
    CHECK(close_prob(levels[0].p_error, 0.18088888888888865));
    CHECK(close_prob(levels[1].p_error, 0.36231773921292454));
    CHECK(close_prob(levels[0].channel[Pauli::I], 0.8191111111111113));
    CHECK(close_prob(levels[0].channel[Pauli::X], 0.00637037037037037));
    CHECK(close_prob(levels[0].channel[Pauli::Y], 0.00637037037037037));
    CHECK(close_prob(levels[0].channel[Pauli::Z], 0.16814814814814816));

    CHECK_THROWS_AS(exact_blockwise_recursion(rep3, 0.1, 0, table), std::invalid_argument);
    CHECK_THROWS_AS(
        exact_blockwise_recursion(StabilizerCode::five_qubit(), 0.1, 2, table),
        std::invalid_argument);
}

TEST_CASE("recursion level 2 equals exhaustive decoding of the tree") {
    // Sum P(e) over every 9-qubit pattern whose blockwise decode fails and
    // compare with the second recursion level.
    const auto rep3 = StabilizerCode::repetition3();
    const double p = 0.1;
    const HardTable table = hard_table(rep3, p);
    const BlockwiseDecoder decoder(ConcatenatedCode{rep3, 2}, table);
    const LogicalDistribution q = LogicalDistribution::depolarizing(p);

    double fail_mass = 0.0;
    std::vector<PauliOperator> residuals;
    for_each_pattern(9, [&](const PauliOperator& e) {
        double prob = 1.0;
        for (size_t i = 0; i < 9; ++i) prob *= q[static_cast<size_t>(e.factor_at(i))];
        if (decoder.residual(e, residuals) != Pauli::I) fail_mass += prob;
    });

    const auto levels = exact_blockwise_recursion(rep3, p, 2, table);
    CHECK(std::abs(fail_mass - levels[1].p_error) < 1e-10);
}

TEST_CASE("Monte Carlo failure rates track the exact recursion") {
    const auto five = StabilizerCode::five_qubit();
    ExperimentConfig config;
    config.code = five;
    config.p_values = {0.05, 0.1, 0.13};
    config.levels = {1, 2, 3, 4};
    config.trials = 20000;
    config.seed = 2024;
    config.decoders = DecoderSelection::Blockwise;
    config.threads = 1;
    const auto rows = run_experiment(config);
    REQUIRE(rows.size() == 12);

    size_t row = 0;
    for (const double p : config.p_values) {
        const HardTable table = hard_table(five, p);
        const auto exact = exact_blockwise_recursion(five, p, 4, table);
        for (int m = 1; m <= 4; ++m, ++row) {
            const double want = exact[size_t(m - 1)].p_error;
            const double sigma =
                std::sqrt(want * (1.0 - want) / static_cast<double>(config.trials));
            CAPTURE(p);
            CAPTURE(m);
            CHECK(rows[row].decoder == "blockwise");
            CHECK(rows[row].level == m);
            CHECK(std::abs(rows[row].p_e - want) <= 3.0 * sigma + 1e-9);
        }
    }
}

TEST_CASE("threshold brackets for the built-in codes") {
    const ThresholdBracket five = blockwise_threshold(StabilizerCode::five_qubit(), 0.12, 0.15);
    CHECK(five.low < five.high);
    CHECK(five.high - five.low <= 1e-4 + 1e-12);
    CHECK(five.low > 0.136);
    CHECK(five.high < 0.138);

    const ThresholdBracket steane = blockwise_threshold(StabilizerCode::steane(), 0.08, 0.11);
    CHECK(steane.low < steane.high);
    CHECK(steane.high - steane.low <= 1e-4 + 1e-12);
    CHECK(steane.low > 0.096);
    CHECK(steane.high < 0.0975);
}

TEST_CASE("threshold bracketing rejects bad inputs") {
    const auto five = StabilizerCode::five_qubit();
    CHECK_THROWS_AS(blockwise_threshold(five, 0.2, 0.3), std::invalid_argument);   // both above
    CHECK_THROWS_AS(blockwise_threshold(five, 0.01, 0.02), std::invalid_argument); // both below
    CHECK_THROWS_AS(blockwise_threshold(five, 0.15, 0.12), std::invalid_argument);
    CHECK_THROWS_AS(blockwise_threshold(five, 0.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(blockwise_threshold(five, 0.12, 0.15, -1.0), std::invalid_argument);
}
