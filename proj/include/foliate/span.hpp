#ifndef FOLIATE_SPAN_HPP
#define FOLIATE_SPAN_HPP

// Generator spans of Pauli operators over GF(2), with coefficient-tracked row
// reduction. Provides membership witnesses, centralizers, set algebra on
// spans, and gauge groups with derived stabilizers and logical pairs.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "foliate/pauli.hpp"

namespace foliate {

namespace detail {

// Column order for 2n-bit symplectic rows: x part first, then z part.
inline bool sym_col(const SymplecticVector& v, std::size_t col, std::size_t n) {
    return col < n ? v.x.get(col) : v.z.get(col - n);
}

inline std::size_t sym_pivot(const SymplecticVector& v, std::size_t n) {
    std::size_t px = v.x.first_set();
    if (px < n) return px;
    std::size_t pz = v.z.first_set();
    if (pz < n) return n + pz;
    return 2 * n;  // zero vector
}

struct EchelonRow {
    SymplecticVector vec;
    std::size_t pivot;
    BitVec coeffs;  // which inserted vectors xor to vec
};

// Reduced row echelon form over GF(2), built incrementally. Each inserted
// vector either grows the rank or yields a dependency; both keep track of
// which inputs combined to produce them.
class SymplecticEchelon {
public:
    SymplecticEchelon(std::size_t n, std::size_t capacity) : n_(n), cap_(capacity) {}

    bool insert(const SymplecticVector& v, std::size_t slot) {
        SymplecticVector r = v;
        BitVec cc(cap_);
        cc.set(slot, true);
        reduce(r, &cc);
        if (sym_pivot(r, n_) == 2 * n_) {
            deps_.push_back(std::move(cc));
            return false;
        }
        std::size_t p = sym_pivot(r, n_);
        // clear the new pivot column from all existing rows
        for (auto& row : rows_) {
            if (sym_col(row.vec, p, n_)) {
                row.vec.xor_with(r);
                row.coeffs.xor_with(cc);
            }
        }
        std::size_t at = 0;
        while (at < rows_.size() && rows_[at].pivot < p) ++at;
        rows_.insert(rows_.begin() + long(at), EchelonRow{std::move(r), p, std::move(cc)});
        return true;
    }

    // XOR away every basis row whose pivot is set in r. Afterwards r is zero
    // iff the original r was in the span; coeffs (if given) accumulates the
    // combination used.
    void reduce(SymplecticVector& r, BitVec* coeffs = nullptr) const {
        for (const auto& row : rows_) {
            if (sym_col(r, row.pivot, n_)) {
                r.xor_with(row.vec);
                if (coeffs) coeffs->xor_with(row.coeffs);
            }
        }
    }

    bool contains(const SymplecticVector& v) const {
        SymplecticVector r = v;
        reduce(r);
        return sym_pivot(r, n_) == 2 * n_;
    }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<EchelonRow>& rows() const { return rows_; }
    const std::vector<BitVec>& dependencies() const { return deps_; }

private:
    std::size_t n_;
    std::size_t cap_;
    std::vector<EchelonRow> rows_;
    std::vector<BitVec> deps_;
};

// Reduced row echelon form of plain bit rows (used for coefficient-space
// algebra, where rows index generators rather than qubits).
class BitEchelon {
public:
    explicit BitEchelon(std::size_t width) : width_(width) {}

    bool insert(const BitVec& v) {
        BitVec r = v;
        reduce(r);
        std::size_t p = r.first_set();
        if (p >= width_) return false;
        for (auto& row : rows_) {
            if (row.vec.get(p)) row.vec.xor_with(r);
        }
        std::size_t at = 0;
        while (at < rows_.size() && rows_[at].pivot < p) ++at;
        rows_.insert(rows_.begin() + long(at), Row{std::move(r), p});
        return true;
    }

    void reduce(BitVec& r) const {
        for (const auto& row : rows_) {
            if (r.get(row.pivot)) r.xor_with(row.vec);
        }
    }

    std::size_t width() const { return width_; }

private:
    struct Row {
        BitVec vec;
        std::size_t pivot;
    };
    std::size_t width_;
    std::vector<Row> rows_;
};

}  // namespace detail

// A set of Pauli operators closed under multiplication, represented by its
// generating list plus a cached reduced echelon basis of the symplectic
// vectors. Phases of the generators are kept; rank and membership questions
// are answered modulo phase unless stated otherwise. Immutable once built.
class PauliSpan {
public:
    PauliSpan() : n_(0), ech_(0, 0), deps_lex_(0) {}

    explicit PauliSpan(std::size_t n) : PauliSpan(n, {}) {}

    PauliSpan(std::size_t n, std::vector<PauliOperator> gens)
        : n_(n), gens_(std::move(gens)), ech_(n, gens_.size()), deps_lex_(gens_.size()) {
        for (const auto& g : gens_) {
            if (g.n() != n_) throw std::invalid_argument("PauliSpan: generator size mismatch");
        }
        for (std::size_t i = 0; i < gens_.size(); ++i) ech_.insert(gens_[i].vec(), i);
        // re-echelonize the dependency space by earliest generator index, so
        // witness coefficient vectors can be made lexicographically minimal
        for (const auto& d : ech_.dependencies()) deps_lex_.insert(d);
    }

    std::size_t n() const { return n_; }
    const std::vector<PauliOperator>& generators() const { return gens_; }
    std::size_t rank() const { return ech_.rank(); }

    std::vector<SymplecticVector> basis_vectors() const {
        std::vector<SymplecticVector> out;
        out.reserve(ech_.rank());
        for (const auto& row : ech_.rows()) out.push_back(row.vec);
        return out;
    }

    // Basis as +1-signed Hermitian operators (phases of the generating list
    // are not reflected here).
    std::vector<PauliOperator> basis_paulis() const {
        std::vector<PauliOperator> out;
        out.reserve(ech_.rank());
        for (const auto& row : ech_.rows()) out.push_back(devectorize(row.vec));
        return out;
    }

    bool contains(const SymplecticVector& v) const { return ech_.contains(v); }
    bool contains(const PauliOperator& p) const { return contains(p.vec()); }

    bool contains_span(const PauliSpan& other) const {
        for (const auto& row : other.ech_.rows()) {
            if (!contains(row.vec)) return false;
        }
        return true;
    }

    // Coefficient vector over the generator list whose product has the same
    // symplectic vector as p, or nullopt if p is outside the span. When the
    // generating list is overcomplete the lexicographically smallest solution
    // is returned (generator 0 weighs heaviest).
    std::optional<BitVec> member_coefficients(const PauliOperator& p) const {
        if (p.n() != n_) throw std::invalid_argument("member_coefficients: size mismatch");
        SymplecticVector r = p.vec();
        BitVec cc(gens_.size());
        ech_.reduce(r, &cc);
        if (detail::sym_pivot(r, n_) != 2 * n_) return std::nullopt;
        deps_lex_.reduce(cc);
        return cc;
    }

    // Product of the selected generators in ascending index order, with exact
    // phase bookkeeping.
    PauliOperator product_of(const BitVec& coeffs) const {
        PauliOperator acc = PauliOperator::identity(n_);
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (coeffs.get(i)) acc = multiply(acc, gens_[i]);
        }
        return acc;
    }

    const detail::SymplecticEchelon& echelon() const { return ech_; }

private:
    std::size_t n_;
    std::vector<PauliOperator> gens_;
    detail::SymplecticEchelon ech_;
    detail::BitEchelon deps_lex_;
};

enum class WitnessMode { UpToPhase, PhaseExact };

// Generator indices whose ordered product reproduces p (up to phase, or
// exactly, per mode). Empty optional when no such combination exists.
inline std::optional<std::vector<std::size_t>> member_with_witness(
    const PauliOperator& p, const PauliSpan& s, WitnessMode mode = WitnessMode::UpToPhase) {
    auto cc = s.member_coefficients(p);
    if (!cc) return std::nullopt;
    if (mode == WitnessMode::PhaseExact) {
        if (!(s.product_of(*cc) == p)) return std::nullopt;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.generators().size(); ++i) {
        if (cc->get(i)) idx.push_back(i);
    }
    return idx;
}

inline PauliOperator witness_product(const PauliSpan& s, const std::vector<std::size_t>& idx) {
    PauliOperator acc = PauliOperator::identity(s.n());
    for (std::size_t i : idx) acc = multiply(acc, s.generators().at(i));
    return acc;
}

// All operators commuting with every element of s, as a span of +1-signed
// representatives. Solves the linear system u.x * g.z + u.z * g.x = 0 over
// the basis rows; rank comes out as 2n - rank(s).
inline PauliSpan centralizer(const PauliSpan& s) {
    const std::size_t n = s.n();
    // constraint row for basis element g, acting on unknown (x|z), is (g.z|g.x)
    std::vector<SymplecticVector> cons;
    for (const auto& g : s.basis_vectors()) cons.push_back(SymplecticVector{g.z, g.x});
    detail::SymplecticEchelon ech(n, cons.size());
    for (std::size_t i = 0; i < cons.size(); ++i) ech.insert(cons[i], i);

    std::vector<bool> is_pivot(2 * n, false);
    for (const auto& row : ech.rows()) is_pivot[row.pivot] = true;

    std::vector<PauliOperator> out;
    for (std::size_t f = 0; f < 2 * n; ++f) {
        if (is_pivot[f]) continue;
        SymplecticVector w{BitVec(n), BitVec(n)};
        auto set_col = [&](std::size_t col, bool v) {
            if (col < n) w.x.set(col, v);
            else w.z.set(col - n, v);
        };
        set_col(f, true);
        for (const auto& row : ech.rows()) {
            if (detail::sym_col(row.vec, f, n)) set_col(row.pivot, true);
        }
        out.push_back(devectorize(w));
    }
    return PauliSpan(n, std::move(out));
}

// Intersection of two spans (modulo phases): every dependency that shows up
// when b's basis is appended to a's basis names an element of both.
inline PauliSpan span_intersection(const PauliSpan& a, const PauliSpan& b) {
    if (a.n() != b.n()) throw std::invalid_argument("span_intersection: size mismatch");
    const std::size_t n = a.n();
    auto abasis = a.basis_vectors();
    auto bbasis = b.basis_vectors();
    detail::SymplecticEchelon ech(n, abasis.size() + bbasis.size());
    for (std::size_t i = 0; i < abasis.size(); ++i) ech.insert(abasis[i], i);
    std::vector<PauliOperator> out;
    for (std::size_t j = 0; j < bbasis.size(); ++j) {
        std::size_t before = ech.dependencies().size();
        ech.insert(bbasis[j], abasis.size() + j);
        if (ech.dependencies().size() > before) {
            const BitVec& d = ech.dependencies().back();
            SymplecticVector v{BitVec(n), BitVec(n)};
            for (std::size_t i = 0; i < abasis.size(); ++i) {
                if (d.get(i)) v.xor_with(abasis[i]);
            }
            out.push_back(devectorize(v));
        }
    }
    return PauliSpan(n, std::move(out));
}

// Representatives for a basis of span(a) modulo span(b), as +1-signed
// operators. Empty when a is contained in b.
inline std::vector<PauliOperator> quotient_basis(const PauliSpan& a, const PauliSpan& b) {
    if (a.n() != b.n()) throw std::invalid_argument("quotient_basis: size mismatch");
    detail::SymplecticEchelon ech(a.n(), a.rank() + b.rank());
    std::size_t slot = 0;
    for (const auto& v : b.basis_vectors()) ech.insert(v, slot++);
    std::vector<PauliOperator> out;
    for (const auto& v : a.basis_vectors()) {
        SymplecticVector r = v;
        ech.reduce(r);
        if (detail::sym_pivot(r, a.n()) != 2 * a.n() && ech.insert(r, slot)) {
            out.push_back(devectorize(r));
            ++slot;
        }
    }
    return out;
}

inline bool spans_equal(const PauliSpan& a, const PauliSpan& b) {
    return a.rank() == b.rank() && a.contains_span(b);
}

// A possibly non-Abelian generating set. The stabilizer (elements of the
// span commuting with the whole span) and the logical pairs are derived at
// construction, with exact signs for the stabilizer: each stabilizer basis
// element is realized as a concrete ordered product of the generators.
//
// Construction fails if the generator signs are inconsistent, i.e. if some
// pairwise-commuting subset multiplies to -1 (or if a stabilizer element
// comes out non-Hermitian). Sign checks are skipped for dependencies that mix
// anticommuting generators, where the product phase is an ordering artifact.
class GaugeGroup {
public:
    GaugeGroup(std::size_t n, std::vector<PauliOperator> gens)
        : span_(n, std::move(gens)) {
        check_dependency_signs();
        derive_stabilizer();
        derive_logical_pairs();
    }

    std::size_t n() const { return span_.n(); }
    const PauliSpan& span() const { return span_; }
    const PauliSpan& stabilizer() const { return stabilizer_; }
    const std::vector<std::pair<PauliOperator, PauliOperator>>& logicals() const {
        return pairs_;
    }

private:
    void check_dependency_signs() {
        const auto& gens = span_.generators();
        for (const auto& d : span_.echelon().dependencies()) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (d.get(i)) idx.push_back(i);
            }
            bool all_commute = true;
            for (std::size_t a = 0; a < idx.size() && all_commute; ++a) {
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    if (!gens[idx[a]].commutes_with(gens[idx[b]])) {
                        all_commute = false;
                        break;
                    }
                }
            }
            if (!all_commute) continue;
            PauliOperator prod = witness_product(span_, idx);
            if (prod.phase_k() != 0) {
                throw std::invalid_argument(
                    "GaugeGroup: commuting generator subset multiplies to a nontrivial phase");
            }
        }
    }

    void derive_stabilizer() {
        const auto& rows = span_.echelon().rows();
        const std::size_t r = rows.size();
        // kernel of the commutation matrix between basis rows: combinations
        // of the basis commuting with every basis row
        std::vector<BitVec> cons;
        for (std::size_t j = 0; j < r; ++j) {
            BitVec row(r);
            for (std::size_t i = 0; i < r; ++i) {
                row.set(i, symplectic_form(rows[i].vec, rows[j].vec));
            }
            cons.push_back(std::move(row));
        }
        std::vector<bool> is_pivot;
        kernel_of(cons, r, is_pivot);
        std::vector<PauliOperator> stab;
        for (const auto& k : kernel_) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < r; ++i) {
                if (k.get(i)) idx.push_back(i);
            }
            PauliOperator elem = PauliOperator::identity(span_.n());
            for (std::size_t i : idx) {
                PauliOperator w = PauliOperator::identity(span_.n());
                const auto& coeffs = rows[i].coeffs;
                for (std::size_t gidx = 0; gidx < span_.generators().size(); ++gidx) {
                    if (coeffs.get(gidx)) w = multiply(w, span_.generators()[gidx]);
                }
                elem = multiply(elem, w);
            }
            if (!elem.hermitian()) {
                throw std::invalid_argument("GaugeGroup: stabilizer element is non-Hermitian");
            }
            stab.push_back(std::move(elem));
        }
        stabilizer_ = PauliSpan(span_.n(), std::move(stab));
    }

    // Kernel basis of the linear map x -> (rows . x) over GF(2), width w.
    void kernel_of(const std::vector<BitVec>& rows_in, std::size_t w,
                   std::vector<bool>& is_pivot_out) {
        std::vector<BitVec> mat;
        std::vector<std::size_t> pivots;
        for (BitVec r : rows_in) {
            for (std::size_t i = 0; i < mat.size(); ++i) {
                if (r.get(pivots[i])) r.xor_with(mat[i]);
            }
            std::size_t p = r.first_set();
            if (p >= w) continue;
            for (std::size_t i = 0; i < mat.size(); ++i) {
                if (mat[i].get(p)) mat[i].xor_with(r);
            }
            mat.push_back(std::move(r));
            pivots.push_back(p);
        }
        is_pivot_out.assign(w, false);
        for (std::size_t p : pivots) is_pivot_out[p] = true;
        kernel_.clear();
        for (std::size_t f = 0; f < w; ++f) {
            if (is_pivot_out[f]) continue;
            BitVec v(w);
            v.set(f, true);
            for (std::size_t i = 0; i < mat.size(); ++i) {
                if (mat[i].get(f)) v.set(pivots[i], true);
            }
            kernel_.push_back(std::move(v));
        }
    }

    void derive_logical_pairs() {
        PauliSpan cent = centralizer(span_);
        // quotient the centralizer by its overlap with the span (reducing by
        // the full span would drag representatives out of the centralizer)
        detail::SymplecticEchelon ech(span_.n(), stabilizer_.rank() + cent.rank());
        std::size_t slot = 0;
        for (const auto& v : stabilizer_.basis_vectors()) ech.insert(v, slot++);
        std::vector<SymplecticVector> quo;
        for (const auto& v : cent.basis_vectors()) {
            SymplecticVector r = v;
            ech.reduce(r);
            if (detail::sym_pivot(r, span_.n()) != 2 * span_.n() && ech.insert(r, slot)) {
                quo.push_back(r);
                ++slot;
            }
        }
        // symplectic pairing on the quotient representatives
        while (!quo.empty()) {
            SymplecticVector u = quo.front();
            quo.erase(quo.begin());
            std::size_t vi = quo.size();
            for (std::size_t i = 0; i < quo.size(); ++i) {
                if (symplectic_form(u, quo[i])) {
                    vi = i;
                    break;
                }
            }
            if (vi == quo.size()) {
                throw std::logic_error("GaugeGroup: unpaired logical representative");
            }
            SymplecticVector v = quo[vi];
            quo.erase(quo.begin() + long(vi));
            for (auto& w : quo) {
                if (symplectic_form(w, v)) w.xor_with(u);
                if (symplectic_form(w, u)) w.xor_with(v);
            }
            pairs_.emplace_back(devectorize(u), devectorize(v));
        }
    }

    PauliSpan span_;
    PauliSpan stabilizer_;
    std::vector<std::pair<PauliOperator, PauliOperator>> pairs_;
    std::vector<BitVec> kernel_;
};

inline const PauliSpan& stabilizer_of_gauge(const GaugeGroup& g) { return g.stabilizer(); }

inline const std::vector<std::pair<PauliOperator, PauliOperator>>& logical_pairs(
    const GaugeGroup& g) {
    return g.logicals();
}

inline PauliSpan conjugate_by_circuit(const PauliSpan& s, const CliffordCircuit& c) {
    std::vector<PauliOperator> gens;
    gens.reserve(s.generators().size());
    for (const auto& g : s.generators()) gens.push_back(conjugate_by_circuit(g, c));
    return PauliSpan(s.n(), std::move(gens));
}

}  // namespace foliate

#endif
