#ifndef FOLIATE_WIRE_HPP
#define FOLIATE_WIRE_HPP

// One-dimensional cluster chains used as logical wires. A chain carries one
// encoded qubit from site 1 to the output site at the far end; interval t of
// a two-sites-per-interval chain exposes the encoded X at site 2t and Z at
// site 2t-1, and the three-sites-per-interval variant adds a Y site.
//
// Sites are numbered 1..N in user-facing coordinates. Operators returned
// here live on the chain's own qubits, with qubit q = site q+1.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "foliate/pauli.hpp"
#include "foliate/span.hpp"

namespace foliate {

enum class WireKind { TypeI, TypeII };

struct WireLayout {
    WireKind kind;
    std::size_t D;  // number of time intervals, >= 1

    std::size_t chain_length() const {
        return kind == WireKind::TypeI ? 2 * D + 1 : 3 * D + 1;
    }
    std::size_t output_site() const { return chain_length(); }
};

// Basis in which the chain's non-output sites get measured.
inline char wire_measurement_basis(WireKind k) {
    return k == WireKind::TypeI ? 'X' : 'Y';
}

// 1-based chain coordinate of the role site in interval t. Valid roles: X
// and Z (both kinds), Y (three-site intervals only). Z reaches t = D+1, the
// output site; X and Y stop at t = D.
inline std::size_t site_index(const WireLayout& w, char role, std::size_t t) {
    if (t < 1) throw std::out_of_range("site_index: t starts at 1");
    const bool two_site = w.kind == WireKind::TypeI;
    switch (role) {
        case 'X':
            if (t > w.D) throw std::out_of_range("site_index: X role ends at t = D");
            return two_site ? 2 * t : 3 * t;
        case 'Y':
            if (two_site) throw std::invalid_argument("site_index: no Y site on this wire kind");
            if (t > w.D) throw std::out_of_range("site_index: Y role ends at t = D");
            return 3 * t - 1;
        case 'Z':
            if (t > w.D + 1) throw std::out_of_range("site_index: Z role ends at t = D+1");
            return two_site ? 2 * t - 1 : 3 * t - 2;
    }
    throw std::invalid_argument("site_index: unknown role");
}

// Stabilizers of the open chain cluster with the encoded input on site 1:
// Z_{u-1} X_u Z_{u+1} for interior u, trailing Z_{N-1} X_N. The encoded
// logicals are X = X_1 Z_2 and Z = Z_1.
inline PauliSpan chain_cluster_span(std::size_t N) {
    if (N < 2) throw std::invalid_argument("chain_cluster_span: need N >= 2");
    std::vector<PauliOperator> gens;
    for (std::size_t u = 2; u <= N; ++u) {
        BitVec x(N), z(N);
        x.set(u - 1, true);
        z.set(u - 2, true);
        if (u + 1 <= N) z.set(u, true);
        gens.push_back(PauliOperator(N, std::move(x), std::move(z), 0));
    }
    return PauliSpan(N, std::move(gens));
}

inline PauliOperator chain_logical_x(std::size_t N) {
    BitVec x(N), z(N);
    x.set(0, true);
    z.set(1, true);
    return PauliOperator(N, std::move(x), std::move(z), 0);
}

inline PauliOperator chain_logical_z(std::size_t N) {
    return PauliOperator::single(N, 0, 'Z');
}

// Product of wire-basis operators recording the encoded P through interval t.
// Two-site intervals accumulate sigma^X factors:
//   Sigma^X(t) = prod_{u<=t} sigma^X[Z(u)]
//   Sigma^Z(t) = prod_{u<=t-1} sigma^X[X(u)]
// Three-site intervals accumulate sigma^Y factors:
//   Sigma^X(t) = prod_{u<=t} sigma^Y[Y(u)] sigma^Y[Z(u)]
//   Sigma^Y(t) = sigma^Y[Z(t)] prod_{u<=t-1} sigma^Y[X(u)] sigma^Y[Z(u)]
//   Sigma^Z(t) = prod_{u<=t-1} sigma^Y[X(u)] sigma^Y[Y(u)]
inline PauliOperator sigma_support(const WireLayout& w, char p, std::size_t t) {
    const std::size_t N = w.chain_length();
    if (t < 1) throw std::out_of_range("sigma_support: t starts at 1");
    PauliOperator acc = PauliOperator::identity(N);
    auto mul_at = [&](char basis, std::size_t site) {
        acc = multiply(acc, PauliOperator::single(N, site - 1, basis));
    };
    if (w.kind == WireKind::TypeI) {
        if (p == 'Y') throw std::invalid_argument("sigma_support: no Y flavor on this wire kind");
        if (t > w.D + 1) throw std::out_of_range("sigma_support: t range");
        if (p == 'X') {
            for (std::size_t u = 1; u <= t; ++u) mul_at('X', 2 * u - 1);
        } else if (p == 'Z') {
            for (std::size_t u = 1; u + 1 <= t; ++u) mul_at('X', 2 * u);
        } else {
            throw std::invalid_argument("sigma_support: unknown flavor");
        }
        return acc;
    }
    switch (p) {
        case 'X':
            if (t > w.D) throw std::out_of_range("sigma_support: t range");
            for (std::size_t u = 1; u <= t; ++u) {
                mul_at('Y', 3 * u - 1);
                mul_at('Y', 3 * u - 2);
            }
            return acc;
        case 'Y':
            if (t > w.D + 1) throw std::out_of_range("sigma_support: t range");
            mul_at('Y', 3 * t - 2);
            for (std::size_t u = 1; u + 1 <= t; ++u) {
                mul_at('Y', 3 * u);
                mul_at('Y', 3 * u - 2);
            }
            return acc;
        case 'Z':
            if (t > w.D + 1) throw std::out_of_range("sigma_support: t range");
            for (std::size_t u = 1; u + 1 <= t; ++u) {
                mul_at('Y', 3 * u);
                mul_at('Y', 3 * u - 1);
            }
            return acc;
    }
    throw std::invalid_argument("sigma_support: unknown flavor");
}

// Stabilizer-equivalent representative of the encoded P during interval t:
// Sigma^P(t) times sigma^Z on the P site of that interval.
inline PauliOperator wire_logical_rep(const WireLayout& w, char p, std::size_t t) {
    PauliOperator rep = sigma_support(w, p, t);
    std::size_t site = site_index(w, p, t);
    return multiply(rep, PauliOperator::single(w.chain_length(), site - 1, 'Z'));
}

// Frame-times-output readout operator for the encoded P once every interior
// site has been measured: the interior part is the accumulated Sigma record,
// the output site carries sigma^P itself.
inline PauliOperator wire_output_readout(const WireLayout& w, char p) {
    const std::size_t N = w.chain_length();
    const std::size_t out = w.output_site();
    PauliOperator x_read =
        multiply(sigma_support(w, 'X', w.D), PauliOperator::single(N, out - 1, 'X'));
    PauliOperator z_read =
        multiply(sigma_support(w, 'Z', w.D + 1), PauliOperator::single(N, out - 1, 'Z'));
    switch (p) {
        case 'X': return x_read;
        case 'Z': return z_read;
        case 'Y': return multiply(x_read, z_read).times_i(1);
    }
    throw std::invalid_argument("wire_output_readout: unknown flavor");
}

}  // namespace foliate

#endif
