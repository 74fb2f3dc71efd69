#ifndef FOLIATE_TABLEAU_HPP
#define FOLIATE_TABLEAU_HPP

// Sign-tracked stabilizer-state simulator. The state is held as n stabilizer
// rows plus n destabilizer rows (destabilizer d_i anticommutes with stabilizer
// s_i and commutes with every other row), which makes measurement O(n^2).

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "foliate/pauli.hpp"
#include "foliate/rng.hpp"
#include "foliate/span.hpp"

namespace foliate {

// solve U(d, rows[j]) = delta_{j,target} by elimination over the constraint
// matrix with rows (z_j | x_j)
inline SymplecticVector solve_partner(const std::vector<PauliOperator>& rows,
                                      std::size_t target) {
    const std::size_t n = rows.empty() ? 0 : rows[0].n();
    const std::size_t m = rows.size();
    // augmented rows: 2n unknown columns + m rhs columns
    std::vector<BitVec> mat;
    for (std::size_t j = 0; j < m; ++j) {
        BitVec row(2 * n + m);
        for (std::size_t q = 0; q < n; ++q) {
            row.set(q, rows[j].zbits().get(q));
            row.set(n + q, rows[j].xbits().get(q));
        }
        row.set(2 * n + j, true);
        mat.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> pivot_row;
    for (std::size_t col = 0; col < 2 * n; ++col) {
        std::size_t sel = mat.size();
        for (std::size_t i = 0; i < mat.size(); ++i) {
            bool taken = false;
            for (std::size_t pr : pivot_row) taken = taken || pr == i;
            if (!taken && mat[i].get(col)) {
                sel = i;
                break;
            }
        }
        if (sel == mat.size()) continue;
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (i != sel && mat[i].get(col)) mat[i].xor_with(mat[sel]);
        }
        pivots.push_back(col);
        pivot_row.push_back(sel);
        if (pivots.size() == m) break;
    }
    if (pivots.size() != m)
        throw std::invalid_argument("solve_partner: constraint matrix is rank-deficient");
    SymplecticVector d(n);
    for (std::size_t k = 0; k < m; ++k) {
        // rhs column for e_target after elimination tells which pivot cols are set
        if (mat[pivot_row[k]].get(2 * n + target)) {
            std::size_t col = pivots[k];
            if (col < n) d.x.set(col, true);
            else d.z.set(col - n, true);
        }
    }
    return d;
}

// Per-qubit eigenstate for product-state initialization.
struct ProductBasis {
    char basis;  // 'X', 'Y', 'Z'
    int sign;    // +1 or -1
};

struct MeasureResult {
    int outcome;         // +1 or -1
    bool deterministic;  // outcome was fixed by the pre-measurement state
};

class Tableau {
  public:
    // |psi> with each qubit in the given eigenstate.
    static Tableau init_product(const std::vector<ProductBasis>& bases) {
        Tableau t;
        t.n_ = bases.size();
        for (std::size_t q = 0; q < t.n_; ++q) {
            const auto& b = bases[q];
            if (b.sign != 1 && b.sign != -1) throw std::invalid_argument("init_product: sign");
            PauliOperator s = PauliOperator::single(t.n_, q, b.basis);
            if (b.sign == -1) s = s.times_i(2);
            char anti;
            switch (b.basis) {
                case 'X': anti = 'Z'; break;
                case 'Y': anti = 'X'; break;
                case 'Z': anti = 'X'; break;
                default: throw std::invalid_argument("init_product: basis");
            }
            t.stab_.push_back(std::move(s));
            t.destab_.push_back(PauliOperator::single(t.n_, q, anti));
        }
        return t;
    }

    // State stabilized by n independent commuting signed generators.
    // Destabilizers are solved for, so arbitrary stabilizer states (fixed
    // codes, entangled inputs) can be seeded directly.
    static Tableau from_stabilizers(std::size_t n, const std::vector<PauliOperator>& rows) {
        if (rows.size() != n) throw std::invalid_argument("from_stabilizers: need n rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].n() != n) throw std::invalid_argument("from_stabilizers: size mismatch");
            if (!rows[i].hermitian())
                throw std::invalid_argument("from_stabilizers: non-Hermitian row");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!rows[i].commutes_with(rows[j]))
                    throw std::invalid_argument("from_stabilizers: rows must commute");
            }
        }
        PauliSpan span(n, rows);
        if (span.rank() != n) throw std::invalid_argument("from_stabilizers: rows dependent");

        Tableau t;
        t.n_ = n;
        t.stab_ = rows;

        // destabilizers: solve U(d_i, s_j) = delta_ij, then repair pairwise
        // commutation among the d's (adding s_i to d_j preserves the deltas)
        std::vector<SymplecticVector> d(n, SymplecticVector(n));
        for (std::size_t i = 0; i < n; ++i) d[i] = solve_partner(rows, i);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (symplectic_form(d[i], d[j])) d[j].xor_with(rows[i].vec());
            }
        }
        for (std::size_t i = 0; i < n; ++i) t.destab_.push_back(devectorize(d[i]));
        return t;
    }

    std::size_t n() const { return n_; }
    const std::vector<PauliOperator>& stabilizer_rows() const { return stab_; }

    void apply_cz(std::size_t a, std::size_t b) {
        if (a == b || a >= n_ || b >= n_) throw std::out_of_range("apply_cz: bad qubit pair");
        CliffordCircuit c = {Gate::cz(a, b)};
        conjugate_rows(c);
    }

    void apply_h(std::size_t q) {
        if (q >= n_) throw std::out_of_range("apply_h");
        CliffordCircuit c = {Gate::h(q)};
        conjugate_rows(c);
    }

    void apply_s(std::size_t q) {
        if (q >= n_) throw std::out_of_range("apply_s");
        CliffordCircuit c = {Gate::s(q)};
        conjugate_rows(c);
    }

    void apply_circuit(const CliffordCircuit& c) { conjugate_rows(c); }

    // Pauli fault channel: conjugation flips the sign of every row that
    // anticommutes with p and leaves the rest alone.
    void apply_pauli(const PauliOperator& p) {
        if (p.n() != n_) throw std::invalid_argument("apply_pauli: size mismatch");
        for (auto& r : stab_) {
            if (!r.commutes_with(p)) r = r.times_i(2);
        }
        for (auto& r : destab_) {
            if (!r.commutes_with(p)) r = r.times_i(2);
        }
    }

    // Measure a Hermitian Pauli. Deterministic outcomes leave the state
    // unchanged. Random outcomes come from rng, unless forced is +1/-1, which
    // selects the branch; forcing against a deterministic value throws.
    MeasureResult measure_pauli(const PauliOperator& p, SplitRng& rng, int forced = 0) {
        if (p.n() != n_) throw std::invalid_argument("measure_pauli: size mismatch");
        if (!p.hermitian()) throw std::invalid_argument("measure_pauli: non-Hermitian");
        std::size_t pivot = n_;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!stab_[i].commutes_with(p)) {
                pivot = i;
                break;
            }
        }
        if (pivot == n_) {
            int value = determined_sign(p);
            if (forced != 0 && forced != value)
                throw std::logic_error("measure_pauli: forced outcome contradicts the state");
            return {value, true};
        }
        int outcome = forced != 0 ? forced : rng.plus_minus();
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != pivot && !stab_[i].commutes_with(p)) stab_[i] = multiply(stab_[i], stab_[pivot]);
            if (!destab_[i].commutes_with(p)) destab_[i] = multiply(destab_[i], stab_[pivot]);
        }
        destab_[pivot] = stab_[pivot];
        stab_[pivot] = outcome == -1 ? p.times_i(2) : p;
        return {outcome, false};
    }

    // +1 / -1 when the state fixes <P>, 0 when indeterminate.
    int expectation(const PauliOperator& p) const {
        if (p.n() != n_) throw std::invalid_argument("expectation: size mismatch");
        if (!p.hermitian()) throw std::invalid_argument("expectation: non-Hermitian");
        for (const auto& row : stab_) {
            if (!row.commutes_with(p)) return 0;
        }
        return determined_sign(p);
    }

    // New tableau on the listed qubits (in the given order). Requires the
    // state to factorize so that a full stabilizer set is supported inside
    // the kept set.
    Tableau extract_subsystem(const std::vector<std::size_t>& qubits) const {
        const std::size_t m = qubits.size();
        std::vector<bool> keep(n_, false);
        for (std::size_t q : qubits) {
            if (q >= n_ || keep[q]) throw std::invalid_argument("extract_subsystem: bad qubit list");
            keep[q] = true;
        }
        // eliminate support on dropped qubits; both X and Z columns count
        std::vector<PauliOperator> work = stab_;
        std::vector<std::size_t> used;
        for (std::size_t q = 0; q < n_; ++q) {
            if (keep[q]) continue;
            for (int half = 0; half < 2; ++half) {
                std::size_t lead = work.size();
                for (std::size_t i = 0; i < work.size(); ++i) {
                    bool hit = half == 0 ? work[i].xbits().get(q) : work[i].zbits().get(q);
                    bool taken = false;
                    for (std::size_t u : used) taken = taken || u == i;
                    if (hit && !taken) {
                        lead = i;
                        break;
                    }
                }
                if (lead == work.size()) continue;
                for (std::size_t i = 0; i < work.size(); ++i) {
                    if (i == lead) continue;
                    bool hit = half == 0 ? work[i].xbits().get(q) : work[i].zbits().get(q);
                    if (hit) work[i] = multiply(work[i], work[lead]);
                }
                used.push_back(lead);
            }
        }
        std::vector<PauliOperator> rows;
        for (std::size_t i = 0; i < work.size(); ++i) {
            bool taken = false;
            for (std::size_t u : used) taken = taken || u == i;
            if (taken) continue;
            // remaining rows must live entirely on kept qubits
            for (std::size_t q = 0; q < n_; ++q) {
                if (!keep[q] && (work[i].xbits().get(q) || work[i].zbits().get(q)))
                    throw std::logic_error("extract_subsystem: state does not factorize");
            }
            BitVec x(m), z(m);
            for (std::size_t j = 0; j < m; ++j) {
                x.set(j, work[i].xbits().get(qubits[j]));
                z.set(j, work[i].zbits().get(qubits[j]));
            }
            rows.push_back(PauliOperator(m, std::move(x), std::move(z), work[i].phase_k()));
        }
        if (rows.size() != m) throw std::logic_error("extract_subsystem: rank mismatch");
        return from_stabilizers(m, rows);
    }

    // O(n^3) structural self-check, for tests.
    bool invariants_hold() const {
        if (stab_.size() != n_ || destab_.size() != n_) return false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!stab_[i].hermitian()) return false;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!stab_[i].commutes_with(stab_[j])) return false;
                bool anti = !destab_[i].commutes_with(stab_[j]);
                if (anti != (i == j)) return false;
            }
        }
        PauliSpan s(n_, stab_);
        return s.rank() == n_;
    }

  private:
    Tableau() = default;

    void conjugate_rows(const CliffordCircuit& c) {
        for (auto& r : stab_) r = conjugate_by_circuit(r, c);
        for (auto& r : destab_) r = conjugate_by_circuit(r, c);
    }

    // sign of P in the signed row span; P must commute with every row
    int determined_sign(const PauliOperator& p) const {
        SymplecticVector r = p.vec();
        PauliOperator w = PauliOperator::identity(n_);
        // greedy reduction against stabilizer rows: destabilizer pairing
        // identifies which rows enter the product
        for (std::size_t i = 0; i < n_; ++i) {
            if (symplectic_form(destab_[i].vec(), r)) {
                w = multiply(w, stab_[i]);
                r.xor_with(stab_[i].vec());
            }
        }
        if (!r.is_zero()) throw std::logic_error("determined_sign: not in row span");
        int delta = (p.phase_k() - w.phase_k() + 4) % 4;
        if (delta == 0) return +1;
        if (delta == 2) return -1;
        throw std::logic_error("determined_sign: phase mismatch");
    }

    std::size_t n_ = 0;
    std::vector<PauliOperator> stab_;
    std::vector<PauliOperator> destab_;
};

}  // namespace foliate

#endif
