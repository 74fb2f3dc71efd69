#ifndef FOLIATE_PAULI_HPP
#define FOLIATE_PAULI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "foliate/bits.hpp"

namespace foliate {

// Binary symplectic representation (x | z) of a Pauli operator modulo phase.
struct SymplecticVector {
    BitVec x, z;

    SymplecticVector() = default;
    explicit SymplecticVector(std::size_t n) : x(n), z(n) {}
    SymplecticVector(BitVec xbits, BitVec zbits) : x(std::move(xbits)), z(std::move(zbits)) {
        if (x.size() != z.size())
            throw std::invalid_argument("SymplecticVector: halves differ in length");
    }

    std::size_t n() const { return x.size(); }

    bool operator==(const SymplecticVector& o) const { return x == o.x && z == o.z; }

    void xor_with(const SymplecticVector& o) {
        x.xor_with(o.x);
        z.xor_with(o.z);
    }
    bool is_zero() const { return !x.any() && !z.any(); }
};

// Symplectic form: x1.z2 + z1.x2 mod 2. Zero exactly when the operators
// commute.
inline bool symplectic_form(const SymplecticVector& u, const SymplecticVector& v) {
    return u.x.dot(v.z) ^ u.z.dot(v.x);
}

// Phase-exact n-qubit Pauli operator P = i^k X^x Z^z with k in Z_4.
// Immutable after construction: all mutators return new values.
class PauliOperator {
  public:
    PauliOperator() : n_(0), k_(0) {}
    PauliOperator(std::size_t n, BitVec x, BitVec z, int k)
        : n_(n), x_(std::move(x)), z_(std::move(z)), k_(((k % 4) + 4) % 4) {
        if (x_.size() != n_ || z_.size() != n_)
            throw std::invalid_argument("PauliOperator: bit vector length != n");
    }

    static PauliOperator identity(std::size_t n) {
        return PauliOperator(n, BitVec(n), BitVec(n), 0);
    }

    // Single-site sigma^X / sigma^Y / sigma^Z. Y is stored as iXZ so that the
    // operator is Hermitian with a +1 displayed sign.
    static PauliOperator single(std::size_t n, std::size_t q, char p) {
        BitVec x(n), z(n);
        int k = 0;
        switch (p) {
            case 'X': x.set(q, true); break;
            case 'Z': z.set(q, true); break;
            case 'Y': x.set(q, true); z.set(q, true); k = 1; break;
            case 'I': break;
            default: throw std::invalid_argument("single: bad Pauli letter");
        }
        return PauliOperator(n, std::move(x), std::move(z), k);
    }

    std::size_t n() const { return n_; }
    const BitVec& xbits() const { return x_; }
    const BitVec& zbits() const { return z_; }
    int phase_k() const { return k_; }

    SymplecticVector vec() const {
        SymplecticVector v(n_);
        v.x = x_;
        v.z = z_;
        return v;
    }

    bool is_identity() const { return !x_.any() && !z_.any() && k_ == 0; }
    bool is_identity_up_to_phase() const { return !x_.any() && !z_.any(); }

    std::size_t weight() const {
        BitVec u = x_;
        BitVec t = z_;
        // support = x OR z
        for (std::size_t i = 0; i < n_; ++i)
            if (t.get(i)) u.set(i, true);
        return u.popcount();
    }

    // Hermitian iff k == x.z (mod 2); Hermitian operators square to +1.
    bool hermitian() const { return (k_ & 1) == int(x_.dot(z_)); }

    // For a Hermitian operator, the +-1 sign in front of the product of
    // single-site I/X/Y/Z factors.
    int sign() const {
        if (!hermitian()) throw std::logic_error("sign: operator is not Hermitian");
        int s = (k_ - int(x_.dot_count(z_) % 4) + 8) % 4;
        return s == 0 ? +1 : -1;
    }

    char letter_at(std::size_t q) const {
        bool a = x_.get(q), b = z_.get(q);
        if (a && b) return 'Y';
        if (a) return 'X';
        if (b) return 'Z';
        return 'I';
    }

    bool commutes_with(const PauliOperator& o) const {
        return !(x_.dot(o.z_) ^ z_.dot(o.x_));
    }

    bool operator==(const PauliOperator& o) const {
        return n_ == o.n_ && k_ == o.k_ && x_ == o.x_ && z_ == o.z_;
    }
    bool operator!=(const PauliOperator& o) const { return !(*this == o); }

    bool equals_up_to_phase(const PauliOperator& o) const {
        return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
    }

    // i^s * P
    PauliOperator times_i(int s) const {
        return PauliOperator(n_, x_, z_, k_ + s);
    }

  private:
    std::size_t n_;
    BitVec x_, z_;
    int k_;
};

inline SymplecticVector vectorize(const PauliOperator& p) { return p.vec(); }

// Inverse of vectorize up to phase: the Hermitian, +1-signed operator with the
// given bit pattern (k = x.z mod 4 makes the sign come out +1).
inline PauliOperator devectorize(const SymplecticVector& v) {
    int k = int(v.x.dot_count(v.z) % 4);
    return PauliOperator(v.x.size(), v.x, v.z, k);
}

// Exact product: i^k1 X^x1 Z^z1 * i^k2 X^x2 Z^z2
//   = i^(k1+k2) X^x1 (Z^z1 X^x2) Z^z2
//   = i^(k1+k2+2*(z1.x2)) X^(x1^x2) Z^(z1^z2).
inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
    if (a.n() != b.n()) throw std::invalid_argument("multiply: size mismatch");
    int k = a.phase_k() + b.phase_k() + 2 * int(a.zbits().dot(b.xbits()));
    BitVec x = a.xbits();
    x.xor_with(b.xbits());
    BitVec z = a.zbits();
    z.xor_with(b.zbits());
    return PauliOperator(a.n(), std::move(x), std::move(z), k);
}

inline PauliOperator adjoint(const PauliOperator& p) {
    // (i^k X^x Z^z)^dag = i^{-k + 2 x.z} X^x Z^z
    int k = -p.phase_k() + 2 * int(p.xbits().dot(p.zbits()));
    return PauliOperator(p.n(), p.xbits(), p.zbits(), k);
}

// ---- text form ----------------------------------------------------------
// "<sign><letters>" with sign one of "+", "-", "+i", "-i" and letters from
// IXYZ, one per qubit, qubit 0 leftmost. Example: "-iXYZI".

inline std::string to_string(const PauliOperator& p) {
    int s = (p.phase_k() - int(p.xbits().dot_count(p.zbits()) % 4) + 8) % 4;
    static const char* pre[4] = {"+", "+i", "-", "-i"};
    std::string out = pre[s];
    for (std::size_t q = 0; q < p.n(); ++q) out.push_back(p.letter_at(q));
    return out;
}

inline PauliOperator parse_pauli(const std::string& text) {
    std::size_t i = 0;
    int s = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    if (i < text.size() && text[i] == 'i') {
        s = 1;
        ++i;
    }
    if (neg) s += 2;
    std::size_t n = text.size() - i;
    BitVec x(n), z(n);
    int k = s;
    for (std::size_t q = 0; q < n; ++q) {
        switch (text[i + q]) {
            case 'I': break;
            case 'X': x.set(q, true); break;
            case 'Z': z.set(q, true); break;
            case 'Y': x.set(q, true); z.set(q, true); k += 1; break;
            default: throw std::invalid_argument("parse_pauli: bad character in " + text);
        }
    }
    return PauliOperator(n, std::move(x), std::move(z), k);
}

// ---- Clifford conjugation ----------------------------------------------

struct Gate {
    enum Kind { CZ, H, S } kind;
    std::size_t a = 0;
    std::size_t b = 0;  // used by CZ only

    static Gate cz(std::size_t a, std::size_t b) { return {CZ, a, b}; }
    static Gate h(std::size_t q) { return {H, q, 0}; }
    static Gate s(std::size_t q) { return {S, q, 0}; }
};

using CliffordCircuit = std::vector<Gate>;

// Conjugate P gate by gate: P -> g P g^dag, first element of the circuit
// applied first. Exact phase tracking:
//   H: X<->Z on q, picks up (-1)^(x_q z_q)
//   S: X -> iXZ, so k += x_q and z_q ^= x_q
//   CZ: X_a -> X_a Z_b (and symmetrically), picks up (-1)^(x_a x_b)
inline PauliOperator conjugate_by_circuit(const PauliOperator& p, const CliffordCircuit& c) {
    BitVec x = p.xbits(), z = p.zbits();
    int k = p.phase_k();
    for (const Gate& g : c) {
        switch (g.kind) {
            case Gate::H: {
                bool a = x.get(g.a), b = z.get(g.a);
                if (a && b) k += 2;
                x.set(g.a, b);
                z.set(g.a, a);
                break;
            }
            case Gate::S: {
                if (x.get(g.a)) {
                    k += 1;
                    z.flip(g.a);
                }
                break;
            }
            case Gate::CZ: {
                bool xa = x.get(g.a), xb = x.get(g.b);
                if (xa && xb) k += 2;
                if (xa) z.flip(g.b);
                if (xb) z.flip(g.a);
                break;
            }
        }
    }
    return PauliOperator(p.n(), std::move(x), std::move(z), k);
}

}  // namespace foliate

#endif
