#include "foliate/wire.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "foliate/tableau.hpp"

using namespace foliate;

TEST(Wire, SiteIndexExamples) {
    WireLayout w1{WireKind::TypeI, 3};
    EXPECT_EQ(site_index(w1, 'Z', 1), 1u);
    EXPECT_EQ(site_index(w1, 'X', 1), 2u);
    EXPECT_EQ(site_index(w1, 'Z', 4), 7u);  // output = 2D+1
    EXPECT_EQ(w1.output_site(), 7u);
    EXPECT_THROW(site_index(w1, 'Y', 1), std::invalid_argument);
    EXPECT_THROW(site_index(w1, 'X', 4), std::out_of_range);

    WireLayout w2{WireKind::TypeII, 3};
    EXPECT_EQ(site_index(w2, 'Y', 2), 5u);
    EXPECT_EQ(site_index(w2, 'Z', 4), 10u);  // output = 3D+1
    EXPECT_EQ(w2.output_site(), 10u);
}

TEST(Wire, SiteIndexIsBijection) {
    for (WireKind kind : {WireKind::TypeI, WireKind::TypeII}) {
        for (std::size_t D = 1; D <= 4; ++D) {
            WireLayout w{kind, D};
            std::set<std::size_t> seen;
            for (std::size_t t = 1; t <= D; ++t) {
                seen.insert(site_index(w, 'X', t));
                seen.insert(site_index(w, 'Z', t));
                if (kind == WireKind::TypeII) seen.insert(site_index(w, 'Y', t));
            }
            seen.insert(site_index(w, 'Z', D + 1));
            EXPECT_EQ(seen.size(), w.chain_length());
            EXPECT_EQ(*seen.begin(), 1u);
            EXPECT_EQ(*seen.rbegin(), w.chain_length());
        }
    }
}

TEST(Wire, ChainClusterSpanExamples) {
    PauliSpan s3 = chain_cluster_span(3);
    ASSERT_EQ(s3.generators().size(), 2u);
    EXPECT_EQ(s3.generators()[0], parse_pauli("+ZXZ"));
    EXPECT_EQ(s3.generators()[1], parse_pauli("+IZX"));

    PauliSpan s2 = chain_cluster_span(2);
    ASSERT_EQ(s2.generators().size(), 1u);
    EXPECT_EQ(s2.generators()[0], parse_pauli("+ZX"));
}

TEST(Wire, ChainClusterMatchesCircuitConjugation) {
    // conjugating X on sites 2..N by the entangling chain must land exactly
    // on the chain generators, signs included
    for (std::size_t N = 2; N <= 9; ++N) {
        CliffordCircuit chain;
        for (std::size_t i = 0; i + 1 < N; ++i) chain.push_back(Gate::cz(i, i + 1));
        PauliSpan s = chain_cluster_span(N);
        for (std::size_t u = 2; u <= N; ++u) {
            PauliOperator x = PauliOperator::single(N, u - 1, 'X');
            EXPECT_EQ(conjugate_by_circuit(x, chain), s.generators()[u - 2]);
        }
    }
}

TEST(Wire, SigmaSupportExamples) {
    WireLayout w1{WireKind::TypeI, 3};
    // Sigma^Z(3): sigma^X on the X sites of intervals 1 and 2, i.e. 2 and 4
    EXPECT_EQ(sigma_support(w1, 'Z', 3), parse_pauli("+IXIXIII"));
    // Sigma^X(1): sigma^X on site 1
    EXPECT_EQ(sigma_support(w1, 'X', 1), parse_pauli("+XIIIIII"));
    EXPECT_THROW(sigma_support(w1, 'Y', 1), std::invalid_argument);

    WireLayout w2{WireKind::TypeII, 2};  // N = 7
    // Sigma^Y(2): sigma^Y on Z(2)=4, X(1)=3, Z(1)=1
    EXPECT_EQ(sigma_support(w2, 'Y', 2), parse_pauli("+YIYYIII"));
}

TEST(Wire, LogicalRepBaseExamples) {
    WireLayout w{WireKind::TypeI, 2};
    EXPECT_EQ(wire_logical_rep(w, 'X', 1), parse_pauli("+XZIII"));
    EXPECT_EQ(wire_logical_rep(w, 'Z', 1), parse_pauli("+ZIIII"));
}

TEST(Wire, LogicalRepsAreStabilizerEquivalent) {
    // rep(t) * rep(1) must be a phase-exact product of chain stabilizers
    for (WireKind kind : {WireKind::TypeI, WireKind::TypeII}) {
        for (std::size_t D = 1; D <= 3; ++D) {
            WireLayout w{kind, D};
            PauliSpan chain = chain_cluster_span(w.chain_length());
            std::vector<char> flavors = {'X', 'Z'};
            if (kind == WireKind::TypeII) flavors.push_back('Y');
            for (char p : flavors) {
                for (std::size_t t = 1; t <= D; ++t) {
                    PauliOperator rel = multiply(wire_logical_rep(w, p, t),
                                                 wire_logical_rep(w, p, 1));
                    EXPECT_TRUE(
                        member_with_witness(rel, chain, WitnessMode::PhaseExact).has_value())
                        << "kind " << int(kind) << " D " << D << " flavor " << p << " t " << t;
                }
            }
        }
    }
}

TEST(Wire, LogicalRepCommutationStructure) {
    for (WireKind kind : {WireKind::TypeI, WireKind::TypeII}) {
        for (std::size_t D = 1; D <= 3; ++D) {
            WireLayout w{kind, D};
            PauliSpan chain = chain_cluster_span(w.chain_length());
            for (std::size_t t = 1; t <= D; ++t) {
                for (std::size_t t2 = 1; t2 <= D; ++t2) {
                    EXPECT_FALSE(
                        wire_logical_rep(w, 'X', t).commutes_with(wire_logical_rep(w, 'Z', t2)));
                }
                for (const auto& g : chain.generators()) {
                    EXPECT_TRUE(wire_logical_rep(w, 'X', t).commutes_with(g));
                    EXPECT_TRUE(wire_logical_rep(w, 'Z', t).commutes_with(g));
                }
            }
        }
    }
}

TEST(Wire, TeleportationReproducesAllSixEigenstates) {
    // entangle the chain, measure every interior site in the wire basis, and
    // check the frame-times-output readout reproduces the encoded eigenvalue
    // while the two conjugate directions stay indeterminate
    const std::vector<std::pair<char, int>> eigenstates = {
        {'X', +1}, {'X', -1}, {'Y', +1}, {'Y', -1}, {'Z', +1}, {'Z', -1}};
    for (WireKind kind : {WireKind::TypeI, WireKind::TypeII}) {
        for (std::size_t D = 1; D <= 4; ++D) {
            WireLayout w{kind, D};
            const std::size_t N = w.chain_length();
            for (auto [basis, sign] : eigenstates) {
                for (std::uint64_t seed = 0; seed < 10; ++seed) {
                    SplitRng rng(seed);
                    std::vector<ProductBasis> init(N, ProductBasis{'X', +1});
                    init[0] = ProductBasis{basis, sign};
                    Tableau t = Tableau::init_product(init);
                    for (std::size_t i = 0; i + 1 < N; ++i) t.apply_cz(i, i + 1);
                    const char mb = wire_measurement_basis(kind);
                    for (std::size_t site = 1; site <= N - 1; ++site) {
                        t.measure_pauli(PauliOperator::single(N, site - 1, mb), rng);
                    }
                    for (char p : {'X', 'Y', 'Z'}) {
                        int got = t.expectation(wire_output_readout(w, p));
                        EXPECT_EQ(got, p == basis ? sign : 0)
                            << "kind " << int(kind) << " D " << D << " input " << basis
                            << (sign > 0 ? "+" : "-") << " readout " << p;
                    }
                }
            }
        }
    }
}
