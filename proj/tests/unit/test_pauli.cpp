#include "doctest.h"

#include "qec/pauli.hpp"
#include "qec/rng.hpp"

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qec;

namespace {

// Independent oracle: explicit 2^n x 2^n complex matrices. Slow but
// unambiguous, so keep n small.
using Cx = std::complex<double>;
using Matrix = std::vector<std::vector<Cx>>;

Matrix single_qubit_matrix(Pauli p) {
    const Cx o(1, 0), i(0, 1), z(0, 0);
    switch (p) {
    case Pauli::I: return {{o, z}, {z, o}};
    case Pauli::X: return {{z, o}, {o, z}};
    case Pauli::Y: return {{z, -i}, {i, z}};
    case Pauli::Z: return {{o, z}, {z, -o}};
    }
    return {};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const size_t ra = a.size(), ca = a[0].size();
    const size_t rb = b.size(), cb = b[0].size();
    Matrix out(ra * rb, std::vector<Cx>(ca * cb));
    for (size_t i = 0; i < ra; ++i)
        for (size_t j = 0; j < ca; ++j)
            for (size_t k = 0; k < rb; ++k)
                for (size_t l = 0; l < cb; ++l)
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return out;
}

Matrix matrix_of(const PauliOperator& op) {
    Matrix m = single_qubit_matrix(op.factor_at(0));
    for (size_t q = 1; q < op.num_qubits(); ++q)
        m = kron(m, single_qubit_matrix(op.factor_at(q)));
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    const size_t n = a.size();
    Matrix out(n, std::vector<Cx>(n, Cx(0, 0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            const Cx aik = a[i][k];
            if (aik == Cx(0, 0)) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] += aik * b[k][j];
        }
    return out;
}

bool matrices_commute(const Matrix& a, const Matrix& b) {
    const Matrix ab = matmul(a, b), ba = matmul(b, a);
    for (size_t i = 0; i < ab.size(); ++i)
        for (size_t j = 0; j < ab.size(); ++j)
            if (std::abs(ab[i][j] - ba[i][j]) > 1e-12) return false;
    return true;
}

// True if a == phase * b for some unit scalar (matrix equality up to phase).
bool proportional(const Matrix& a, const Matrix& b) {
    Cx phase(0, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) {
            const bool za = std::abs(a[i][j]) < 1e-12;
            const bool zb = std::abs(b[i][j]) < 1e-12;
            if (za != zb) return false;
            if (za) continue;
            const Cx r = a[i][j] / b[i][j];
            if (phase == Cx(0, 0))
                phase = r;
            else if (std::abs(r - phase) > 1e-12)
                return false;
        }
    return phase != Cx(0, 0) && std::abs(std::abs(phase) - 1.0) < 1e-12;
}

PauliOperator nth_operator(size_t n_qubits, uint64_t index) {
    PauliOperator op(n_qubits);
    for (size_t q = 0; q < n_qubits; ++q) {
        op.set_factor(q, static_cast<Pauli>(index & 3));
        index >>= 2;
    }
    return op;
}

PauliOperator random_operator(size_t n_qubits, RngStream& rng) {
    PauliOperator op(n_qubits);
    for (size_t q = 0; q < n_qubits; ++q)
        op.set_factor(q, static_cast<Pauli>(rng.next() & 3));
    return op;
}

} // namespace

TEST_CASE("single-factor product matches the group table") {
    // I is the unit, every factor squares to I, and distinct non-identity
    // factors multiply to the third one (phase dropped).
    auto mul = [](Pauli a, Pauli b) { return a * b; };
    CHECK(mul(Pauli::I, Pauli::X) == Pauli::X);
    CHECK(mul(Pauli::X, Pauli::I) == Pauli::X);
    CHECK(mul(Pauli::X, Pauli::X) == Pauli::I);
    CHECK(mul(Pauli::Y, Pauli::Y) == Pauli::I);
    CHECK(mul(Pauli::Z, Pauli::Z) == Pauli::I);
    CHECK(mul(Pauli::X, Pauli::Y) == Pauli::Z);
    CHECK(mul(Pauli::Y, Pauli::X) == Pauli::Z);
    CHECK(mul(Pauli::X, Pauli::Z) == Pauli::Y);
    CHECK(mul(Pauli::Y, Pauli::Z) == Pauli::X);
    CHECK(pauli_from_components(false, false) == Pauli::I);
    CHECK(pauli_from_components(true, false) == Pauli::X);
    CHECK(pauli_from_components(false, true) == Pauli::Z);
    CHECK(pauli_from_components(true, true) == Pauli::Y);
    CHECK(has_x_component(Pauli::Y));
    CHECK(has_z_component(Pauli::Y));
    CHECK(!has_x_component(Pauli::Z));
    CHECK(!has_z_component(Pauli::X));
}

TEST_CASE("parse and render round-trip") {
    const PauliOperator op = PauliOperator::parse("XZZXI");
    CHECK(op.num_qubits() == 5);
    CHECK(op.str() == "XZZXI");
    CHECK(op.factor_at(0) == Pauli::X);
    CHECK(op.factor_at(1) == Pauli::Z);
    CHECK(op.factor_at(4) == Pauli::I);
    CHECK(op.x_bit(0));
    CHECK(!op.z_bit(0));
    CHECK(!op.x_bit(1));
    CHECK(op.z_bit(1));
    CHECK(op.weight() == 4);
    CHECK(!op.is_identity());
    CHECK(PauliOperator::parse("IIIII").weight() == 0);
    CHECK(PauliOperator::parse("IIIII").is_identity());
    CHECK(PauliOperator::parse("Y").weight() == 1);

    PauliOperator id(7);
    CHECK(id.str() == "IIIIIII");
    CHECK(id.weight() == 0);
}

TEST_CASE("parse rejects bad input with a 1-based position") {
    CHECK_THROWS_AS(PauliOperator::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(PauliOperator(size_t{0}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(PauliOperator::parse("XZA"),
                         doctest::Contains("position 3"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(PauliOperator::parse("xZZXI"),
                         doctest::Contains("position 1"),
                         std::invalid_argument);
}

TEST_CASE("factor access is bounds-checked") {
    PauliOperator op = PauliOperator::parse("XYZ");
    CHECK_THROWS_AS(op.factor_at(3), std::out_of_range);
    CHECK_THROWS_AS(op.set_factor(3, Pauli::X), std::out_of_range);
    op.set_factor(0, Pauli::X); // overwrite, not accumulate
    op.set_factor(0, Pauli::Z);
    CHECK(op.factor_at(0) == Pauli::Z);
    op.clear();
    CHECK(op.str() == "III");
}

TEST_CASE("known product and commutation values") {
    const PauliOperator a = PauliOperator::parse("XZZXI");
    const PauliOperator b = PauliOperator::parse("IXZZX");
    CHECK((a * b).str() == "XYIYX");
    CHECK(a.commutes_with(b)); // two anticommuting positions cancel
    CHECK(b.commutes_with(a));
    CHECK(!PauliOperator::parse("X").commutes_with(PauliOperator::parse("Z")));
    CHECK(PauliOperator::parse("X").commutes_with(PauliOperator::parse("X")));
    CHECK(!PauliOperator::parse("XY").commutes_with(PauliOperator::parse("ZY")));

    PauliOperator c = a;
    c *= b;
    CHECK(c == a * b);
    CHECK(c != a);
    CHECK_THROWS_AS(c *= PauliOperator::parse("XY"), std::invalid_argument);
}

TEST_CASE("product and commutation agree with the matrix representation") {
    for (size_t n = 1; n <= 3; ++n) {
        const uint64_t count = uint64_t{1} << (2 * n);
        std::vector<Matrix> mats(count);
        for (uint64_t i = 0; i < count; ++i)
            mats[i] = matrix_of(nth_operator(n, i));
        for (uint64_t i = 0; i < count; ++i) {
            const PauliOperator a = nth_operator(n, i);
            for (uint64_t j = 0; j < count; ++j) {
                const PauliOperator b = nth_operator(n, j);
                CHECK(a.commutes_with(b) == matrices_commute(mats[i], mats[j]));
                CHECK(proportional(matmul(mats[i], mats[j]), matrix_of(a * b)));
            }
        }
    }
}

TEST_CASE("group identities hold on random wide operators") {
    // 70 qubits spans two packed words, so this also exercises the
    // word-boundary handling.
    RngStream rng(20240901);
    const size_t n = 70;
    for (int trial = 0; trial < 200; ++trial) {
        const PauliOperator a = random_operator(n, rng);
        const PauliOperator b = random_operator(n, rng);
        const PauliOperator c = random_operator(n, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * a == PauliOperator(n));
        CHECK(a * PauliOperator(n) == a);
        CHECK(a.commutes_with(b) == b.commutes_with(a));
        CHECK(a.commutes_with(a));

        // Per-factor recomputation of weight and commutation parity.
        size_t w = 0;
        int anti = 0;
        for (size_t q = 0; q < n; ++q) {
            const Pauli fa = a.factor_at(q), fb = b.factor_at(q);
            if (fa != Pauli::I) ++w;
            if (fa != Pauli::I && fb != Pauli::I && fa != fb) ++anti;
        }
        CHECK(a.weight() == w);
        CHECK(a.commutes_with(b) == (anti % 2 == 0));
        CHECK((a * b).weight() <= a.weight() + b.weight());
    }
}

TEST_CASE("pauli_char names the four factors") {
    const std::array<char, 4> expect{'I', 'X', 'Y', 'Z'};
    for (int i = 0; i < 4; ++i)
        CHECK(pauli_char(static_cast<Pauli>(i)) == expect[size_t(i)]);
}
