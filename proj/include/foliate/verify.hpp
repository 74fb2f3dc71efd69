#ifndef FOLIATE_VERIFY_HPP
#define FOLIATE_VERIFY_HPP

// End-to-end verification harness. Channels are executed on the tableau
// simulator: the input code (completed to a pure state by logical fixings)
// is entangled into the resource graph, every non-output vertex is measured
// in its declared basis, and the recorded outcomes drive three kinds of
// certificate: check parities, outcome-product rules for the output state
// (byproduct frames), and inferred readings of measured input content.
// Pauli faults can be injected between entangling and measurement, and a
// whole-graph scan classifies which single-site faults the check set sees.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "foliate/foliation.hpp"
#include "foliate/pauli.hpp"
#include "foliate/rng.hpp"
#include "foliate/span.hpp"
#include "foliate/tableau.hpp"

namespace foliate {

struct Transcript {
    std::map<std::size_t, int> outcomes;  // measured vertex -> +1/-1
    std::vector<std::size_t> order;
    std::uint64_t seed = 0;

    int outcome(std::size_t v) const {
        auto it = outcomes.find(v);
        if (it == outcomes.end())
            throw std::invalid_argument("transcript: no outcome recorded for vertex " +
                                        std::to_string(v));
        return it->second;
    }

    int parity_over(const std::vector<std::size_t>& support) const {
        int pr = 1;
        for (std::size_t v : support) pr *= outcome(v);
        return pr;
    }
};

enum class OutcomePolicy { Seeded, ForcedPlus };

struct Fixing {
    PauliOperator rep;
    int value = +1;
};

// Complete the input code to a full-rank initial group by adjoining signed
// logical fixings. Restating an already determined value is allowed when
// consistent; anticommuting or contradictory fixings are rejected, as is a
// set that leaves the initial state mixed.
inline PauliSpan fix_input(const ChannelSpec& spec, const std::vector<Fixing>& fixings) {
    std::vector<PauliOperator> gens = spec.g_in.generators();
    for (std::size_t i = 0; i < fixings.size(); ++i) {
        const auto& fx = fixings[i];
        if (fx.value != +1 && fx.value != -1)
            throw std::invalid_argument("fix_input: fixing value must be +1 or -1");
        if (fx.rep.n() != spec.n)
            throw std::invalid_argument("fix_input: fixing acts on the wrong qubit count");
        if (!fx.rep.hermitian())
            throw std::invalid_argument("fix_input: fixing must be Hermitian");
        for (const auto& g : gens) {
            if (!fx.rep.commutes_with(g))
                throw std::invalid_argument("fix_input: fixing " + std::to_string(i + 1) +
                                            " anticommutes with the accumulated input group");
        }
        PauliOperator signed_rep = fx.value == -1 ? fx.rep.times_i(2) : fx.rep;
        PauliSpan cur(spec.n, gens);
        if (auto cc = cur.member_coefficients(signed_rep)) {
            PauliOperator w = cur.product_of(*cc);
            int delta = (signed_rep.phase_k() - w.phase_k() + 8) % 4;
            if (delta != 0)
                throw std::invalid_argument("fix_input: fixing " + std::to_string(i + 1) +
                                            " contradicts an already fixed value");
            continue;
        }
        gens.push_back(std::move(signed_rep));
    }
    PauliSpan out(spec.n, std::move(gens));
    if (out.rank() != spec.n) {
        std::ostringstream os;
        os << "fix_input: initial state underdetermined, rank " << out.rank() << " of "
           << spec.n;
        throw std::invalid_argument(os.str());
    }
    return out;
}

namespace detail {

// signed generating subset with the dependent tail dropped
inline std::vector<PauliOperator> independent_rows(const PauliSpan& s) {
    SymplecticEchelon ech(s.n(), s.generators().size());
    std::vector<PauliOperator> out;
    std::size_t slot = 0;
    for (const auto& g : s.generators()) {
        if (ech.insert(g.vec(), slot++)) out.push_back(g);
    }
    return out;
}

// sign of t relative to a stabilizer span of the state: t = sign * member,
// or nullopt when t is not (plus or minus) an element
inline std::optional<int> reduce_sign(const PauliSpan& span, const PauliOperator& t) {
    auto cc = span.member_coefficients(t);
    if (!cc) return std::nullopt;
    PauliOperator w = span.product_of(*cc);
    int delta = (t.phase_k() - w.phase_k() + 8) % 4;
    if (delta != 0 && delta != 2) throw std::logic_error("reduce_sign: non-real relation");
    return delta == 0 ? +1 : -1;
}

// sign of op relative to the product of its single-site letter factors
// (factors act on distinct vertices, so their order is immaterial)
inline int letters_fold(const PauliOperator& op) {
    PauliOperator recomposed = PauliOperator::identity(op.n());
    for (std::size_t v = 0; v < op.n(); ++v) {
        char l = op.letter_at(v);
        if (l != 'I') recomposed = multiply(recomposed, PauliOperator::single(op.n(), v, l));
    }
    int delta = (op.phase_k() - recomposed.phase_k() + 8) % 4;
    if (delta != 0 && delta != 2) throw std::logic_error("letters_fold: non-real relation");
    return delta == 0 ? +1 : -1;
}

}  // namespace detail

// Entangled pre-measurement state: the initial group on the input vertices,
// plus states everywhere else, then one controlled-phase per edge.
inline Tableau entangled_state(const Foliation& f, const PauliSpan& initial) {
    const auto& g = f.graph();
    const auto& spec = f.spec();
    if (initial.n() != spec.n || initial.rank() != spec.n)
        throw std::invalid_argument(
            "entangled_state: initial group must have full rank on the input code");
    std::vector<bool> is_input(g.n_vertices, false);
    for (std::size_t j = 0; j < spec.n; ++j) is_input[g.wire_site_id(j, 1)] = true;
    std::vector<PauliOperator> rows;
    for (const auto& p : detail::independent_rows(initial)) rows.push_back(f.embed_input(p));
    for (std::size_t v = 0; v < g.n_vertices; ++v) {
        if (!is_input[v]) rows.push_back(PauliOperator::single(g.n_vertices, v, 'X'));
    }
    Tableau tab = Tableau::from_stabilizers(g.n_vertices, rows);
    CliffordCircuit cz;
    for (auto [a, b] : g.edges) cz.push_back(Gate::cz(a, b));
    tab.apply_circuit(cz);
    return tab;
}

// The same state as an exact signed operator span, for reductions.
inline PauliSpan entangled_span(const Foliation& f, const PauliSpan& initial) {
    const auto& g = f.graph();
    if (initial.n() != f.spec().n || initial.rank() != f.spec().n)
        throw std::invalid_argument(
            "entangled_span: initial group must have full rank on the input code");
    CliffordCircuit cz;
    for (auto [a, b] : g.edges) cz.push_back(Gate::cz(a, b));
    std::vector<PauliOperator> rows = f.graph_only_span().generators();
    for (const auto& p : detail::independent_rows(initial))
        rows.push_back(conjugate_by_circuit(f.embed_input(p), cz));
    return PauliSpan(g.n_vertices, std::move(rows));
}

// Measure every non-output vertex of an already prepared (and possibly
// faulted) state in its declared basis. The forced-all-plus policy pins
// every genuinely random outcome to +1 and leaves determined values alone.
inline std::pair<Transcript, Tableau> measure_all(const Foliation& f, Tableau tab,
                                                  OutcomePolicy policy, std::uint64_t seed,
                                                  const std::vector<std::size_t>* custom_order) {
    const auto& g = f.graph();
    Transcript tr;
    tr.seed = seed;
    tr.order = custom_order ? *custom_order : measurement_order(f.spec(), g);
    if (tr.order.size() != g.n_vertices - g.outputs.size())
        throw std::invalid_argument("measure_all: order must cover every non-output vertex");
    SplitRng rng(seed, 77);
    for (std::size_t v : tr.order) {
        if (v >= g.n_vertices || g.is_output(v))
            throw std::invalid_argument("measure_all: order names an output vertex");
        PauliOperator m = f.basis_single(v);
        int forced = 0;
        if (policy == OutcomePolicy::ForcedPlus && tab.expectation(m) == 0) forced = +1;
        auto res = tab.measure_pauli(m, rng, forced);
        if (!tr.outcomes.emplace(v, res.outcome).second)
            throw std::invalid_argument("measure_all: vertex measured twice");
    }
    Tableau out = tab.extract_subsystem(g.outputs);
    return {std::move(tr), std::move(out)};
}

// One full channel execution: entangle, measure everything, hand back the
// transcript and the reduced state on the output vertices.
inline std::pair<Transcript, Tableau> run_channel(
    const Foliation& f, const PauliSpan& initial, OutcomePolicy policy, std::uint64_t seed,
    const std::vector<std::size_t>* custom_order = nullptr) {
    return measure_all(f, entangled_state(f, initial), policy, seed, custom_order);
}

inline std::vector<int> eval_checks(const Transcript& tr,
                                    const std::vector<CheckOperator>& checks) {
    std::vector<int> out;
    out.reserve(checks.size());
    for (const auto& c : checks) out.push_back(tr.parity_over(c.support));
    return out;
}

inline std::vector<std::size_t> violated_checks(const Transcript& tr,
                                                const std::vector<CheckOperator>& checks) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        if (tr.parity_over(checks[i].support) != checks[i].predicted_parity) out.push_back(i);
    }
    return out;
}

// Outcome-product rule: after a run, the output state satisfies `observable`
// with eigenvalue fold times the outcome product over `support`.
struct ReadoutRule {
    PauliOperator observable;          // on the n output qubits
    std::vector<std::size_t> support;  // measured vertices
    int fold = +1;
};

// Derive the rule carried by a record operator: reduce it against a span of
// exact stabilizers of the entangled state, split off the output part, and
// fold the phases. Nullopt when the record is not (plus or minus) a member,
// i.e. when the state does not determine its value.
inline std::optional<ReadoutRule> derive_rule(const Foliation& f, const PauliSpan& state_span,
                                              const PauliOperator& record) {
    auto sigma = detail::reduce_sign(state_span, record);
    if (!sigma) return std::nullopt;
    const auto& g = f.graph();
    ReadoutRule rule;
    rule.fold = *sigma * detail::letters_fold(record);
    rule.observable = PauliOperator::identity(f.spec().n);
    for (std::size_t v = 0; v < g.n_vertices; ++v) {
        char l = record.letter_at(v);
        if (l == 'I') continue;
        if (g.is_output(v)) {
            rule.observable = multiply(
                rule.observable, PauliOperator::single(f.spec().n, g.coords[v].wire, l));
        } else {
            if (l != g.basis.at(v))
                throw std::logic_error("derive_rule: record letter disagrees with measured basis");
            rule.support.push_back(v);
        }
    }
    return rule;
}

// Input-independent rules for every output-code basis element. Content the
// channel inherits from the input group reduces directly; content the
// channel itself enforces needs its final-interval reading folded in.
inline std::vector<ReadoutRule> output_code_rules(const Foliation& f) {
    const ChannelSpec& spec = f.spec();
    PauliSpan base = detail::channel_base_span(spec);
    PauliSpan kept = span_intersection(spec.g_in, centralizer(PauliSpan(spec.n, spec.g_r)));
    std::vector<PauliOperator> joined = base.generators();
    for (const auto& p : kept.generators()) joined.push_back(p);
    PauliSpan joined_span(spec.n, std::move(joined));

    // the enforced factor an interval can actually read: gauge channels take
    // the derived-stabilizer split, the rest the interlink-aware one
    auto enforced_part = [&](const PauliOperator& p) {
        if (spec.mode == FoliationMode::Subsystem) {
            auto w = member_with_witness(p, joined_span);
            if (!w)
                throw std::logic_error("output_code_rules: generator escapes the joined span");
            PauliOperator e = PauliOperator::identity(spec.n);
            for (std::size_t i : *w) {
                if (i < base.generators().size()) e = multiply(e, base.generators()[i]);
            }
            if (!e.hermitian()) e = e.times_i(1);
            return e;
        }
        auto ch = f.readable_channel_part(p, spec.D);
        if (!ch)
            throw std::logic_error("output_code_rules: no readable split for a generator");
        return *ch;
    };

    std::vector<ReadoutRule> rules;
    for (const auto& p : output_code(spec).basis_paulis()) {
        PauliOperator record = f.correlation_operator(p);
        if (auto direct = derive_rule(f, f.resource_span(), record)) {
            rules.push_back(std::move(*direct));
            continue;
        }
        auto reading = f.inferred_reading(enforced_part(p), spec.D);
        PauliOperator combined = multiply(record, adjoint(reading.pauli));
        auto rule = derive_rule(f, f.resource_span(), combined);
        if (!rule) throw std::logic_error("output_code_rules: no outcome rule for a generator");
        rules.push_back(std::move(*rule));
    }
    return rules;
}

// Rules for the surviving logicals against a concrete entangled span: only
// available (engaged) when the initial group determines the logical's value.
inline std::vector<std::optional<ReadoutRule>> logical_rules(const Foliation& f,
                                                             const PauliSpan& entangled) {
    std::vector<std::optional<ReadoutRule>> out;
    PauliSpan logicals = output_logicals(f.spec());
    for (const auto& l : logicals.basis_paulis())
        out.push_back(derive_rule(f, entangled, f.correlation_operator(l)));
    return out;
}

struct FrameEntry {
    PauliOperator observable;  // on the n output qubits
    int sign;                  // expected output eigenvalue under this transcript
};

struct FrameReport {
    std::vector<FrameEntry> code;
    std::vector<FrameEntry> logicals;
};

inline FrameReport frame_report(const Foliation& f, const PauliSpan& entangled,
                                const Transcript& tr) {
    FrameReport rep;
    for (const auto& rule : output_code_rules(f))
        rep.code.push_back({rule.observable, rule.fold * tr.parity_over(rule.support)});
    for (const auto& maybe : logical_rules(f, entangled)) {
        if (maybe)
            rep.logicals.push_back({maybe->observable, maybe->fold * tr.parity_over(maybe->support)});
    }
    return rep;
}

struct VerifyReport {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t code_rules = 0;
    std::size_t logical_rules_engaged = 0;
    std::size_t inputs_read = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Full certification sweep: for every seed, every check holds its predicted
// parity, every output-code generator stabilizes the output state with its
// frame-corrected sign, every determined surviving logical lands with its
// frame-corrected value, and every determined measured input reads back the
// value it was fixed to. Violations are reported, never thrown.
inline VerifyReport verify_output(const ChannelSpec& spec, const std::vector<Fixing>& fixings,
                                  const std::vector<std::uint64_t>& seeds,
                                  OutcomePolicy policy = OutcomePolicy::Seeded,
                                  const std::vector<CheckOperator>* checks_override = nullptr) {
    Foliation f(spec);
    PauliSpan initial = fix_input(spec, fixings);
    PauliSpan entangled = entangled_span(f, initial);
    std::vector<CheckOperator> checks = checks_override ? *checks_override : f.all_checks();
    std::vector<ReadoutRule> code_rules = output_code_rules(f);
    std::vector<std::optional<ReadoutRule>> log_rules = logical_rules(f, entangled);

    // measured input content whose value the initial group pins down
    struct InputProbe {
        PauliOperator op;
        Foliation::InferredReading read;
        int expected;
    };
    std::vector<InputProbe> probes;
    {
        PauliSpan meas = measured_inputs(spec);
        for (const auto& q : meas.basis_paulis()) {
            // quotient representatives may sit outside the channel group
            // itself; probe the readable channel factor of the same coset
            auto ch = readable_channel_part(spec, q);
            if (!ch) continue;
            if (ch->xbits().first_set() >= spec.n && ch->zbits().first_set() >= spec.n)
                continue;  // coset is pure input content, nothing to read
            auto expected = detail::reduce_sign(initial, *ch);
            if (!expected) continue;  // genuinely random under this input
            probes.push_back({*ch, f.inferred_reading(*ch, 1), *expected});
        }
    }
    Tableau base = entangled_state(f, initial);

    VerifyReport rep;
    rep.trials = seeds.size();
    rep.checks = checks.size();
    rep.code_rules = code_rules.size();
    for (const auto& m : log_rules) {
        if (m) ++rep.logical_rules_engaged;
    }
    rep.inputs_read = probes.size();

    auto run_trial = [&](std::size_t i) {
        std::vector<std::string> bad;
        auto note = [&](const std::string& m) {
            bad.push_back("seed " + std::to_string(seeds[i]) + ": " + m);
        };
        try {
            auto [tr, out] = measure_all(f, base, policy, seeds[i], nullptr);
            for (std::size_t c = 0; c < checks.size(); ++c) {
                int got = tr.parity_over(checks[c].support);
                if (got != checks[c].predicted_parity)
                    note("check " + std::to_string(c) + " read " + std::to_string(got) +
                         ", expected " + std::to_string(checks[c].predicted_parity));
            }
            for (const auto& rule : code_rules) {
                int want = rule.fold * tr.parity_over(rule.support);
                int got = out.expectation(rule.observable);
                if (got != want)
                    note("output generator " + to_string(rule.observable) +
                         " carries sign " + std::to_string(got) + ", frame says " +
                         std::to_string(want));
            }
            for (const auto& maybe : log_rules) {
                if (!maybe) continue;
                int want = maybe->fold * tr.parity_over(maybe->support);
                int got = out.expectation(maybe->observable);
                if (got != want)
                    note("surviving logical " + to_string(maybe->observable) +
                         " carries sign " + std::to_string(got) + ", frame says " +
                         std::to_string(want));
            }
            for (const auto& pb : probes) {
                int got = pb.read.parity_fold * tr.parity_over(pb.read.support);
                if (got != pb.expected)
                    note("measured input " + to_string(pb.op) + " read back " +
                         std::to_string(got) + ", fixed to " + std::to_string(pb.expected));
            }
        } catch (const std::exception& e) {
            note(std::string("trial raised: ") + e.what());
        }
        return bad;
    };

    std::vector<std::vector<std::string>> per_seed(seeds.size());
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, seeds.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) per_seed[i] = run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < per_seed.size();)
                    per_seed[i] = run_trial(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& chunk : per_seed) {
        for (auto& m : chunk) rep.violations.push_back(std::move(m));
    }
    return rep;
}

struct InjectionReport {
    Transcript transcript;
    std::vector<std::size_t> violated;  // indices into the evaluated check list
    bool invisible = false;             // a fault was present but no check flipped
};

// Apply single-site Pauli faults after entangling and before measurement,
// then report which checks flip. Output vertices carry the state itself, so
// faults there are rejected as undetectable by construction.
inline InjectionReport inject_and_syndrome(
    const Foliation& f, const PauliSpan& initial,
    const std::vector<std::pair<std::size_t, char>>& errors, std::uint64_t seed,
    const std::vector<CheckOperator>* checks_override = nullptr) {
    const auto& g = f.graph();
    Tableau tab = entangled_state(f, initial);
    for (auto [v, letter] : errors) {
        if (v >= g.n_vertices) throw std::invalid_argument("inject: vertex out of range");
        if (g.is_output(v))
            throw std::invalid_argument(
                "inject: fault on an output vertex is undetectable by construction");
        tab.apply_pauli(PauliOperator::single(g.n_vertices, v, letter));
    }
    auto [tr, out] = measure_all(f, std::move(tab), OutcomePolicy::Seeded, seed, nullptr);
    (void)out;
    InjectionReport rep;
    rep.transcript = std::move(tr);
    std::vector<CheckOperator> own;
    if (!checks_override) {
        own = f.all_checks();
        checks_override = &own;
    }
    rep.violated = violated_checks(rep.transcript, *checks_override);
    rep.invisible = rep.violated.empty() && !errors.empty();
    return rep;
}

// Silent-fault classification. Harmless faults multiply into the resource
// stabilizers and measured singles, changing nothing observable. A silent
// fault can instead be equivalent, modulo that group, to an operator on the
// output block alone: the channel structurally cannot see it (the final
// record site of a wire times an output-adjacent stabilizer is the canonical
// case), so responsibility passes to whoever consumes the output. Such a
// residual is deferred when the output code itself flags it, and genuinely
// harmful when it commutes with the output code, i.e. acts as a logical.
enum class FaultClass { Detected, Harmless, DeferredToOutput, UndetectedHarmful };

// Faults that multiply into the resource stabilizers or the measured
// single-site operators change no recorded parity and no carried content.
inline PauliSpan harmless_group(const Foliation& f) {
    const auto& g = f.graph();
    std::vector<PauliOperator> gens = f.resource_span().generators();
    for (std::size_t v = 0; v < g.n_vertices; ++v) {
        if (!g.is_output(v)) gens.push_back(f.basis_single(v));
    }
    return PauliSpan(g.n_vertices, std::move(gens));
}

namespace detail {

// n-qubit operator placed letter for letter on the output vertices
inline PauliOperator output_image(const Foliation& f, const PauliOperator& p) {
    const auto& g = f.graph();
    BitVec x(g.n_vertices), z(g.n_vertices);
    for (std::size_t j = 0; j < f.spec().n; ++j) {
        x.set(g.outputs.at(j), p.xbits().get(j));
        z.set(g.outputs.at(j), p.zbits().get(j));
    }
    return PauliOperator(g.n_vertices, std::move(x), std::move(z), 0);
}

}  // namespace detail

struct FaultScanEntry {
    std::size_t vertex;
    char letter;
    FaultClass cls;
    std::size_t flipped;                    // how many checks see the fault
    std::optional<PauliOperator> residual;  // output-block equivalent, when silent
};

// Exhaustive single-site scan: each fault letter on each measured vertex is
// classified by check incidence (a fault flips a check exactly when it sits
// in the support with a letter different from the measured basis) and, for
// silent faults, by the group argument above.
inline std::vector<FaultScanEntry> single_fault_scan(
    const Foliation& f, const std::vector<CheckOperator>& checks) {
    const auto& g = f.graph();
    const ChannelSpec& spec = f.spec();
    PauliSpan harmless = harmless_group(f);

    std::vector<PauliOperator> aug = harmless.generators();
    std::size_t tail = aug.size();
    for (std::size_t j = 0; j < spec.n; ++j) {
        aug.push_back(PauliOperator::single(g.n_vertices, g.outputs.at(j), 'X'));
        aug.push_back(PauliOperator::single(g.n_vertices, g.outputs.at(j), 'Z'));
    }
    PauliSpan augmented(g.n_vertices, std::move(aug));

    std::vector<PauliOperator> code_images;
    {
        PauliSpan code = output_code(spec);
        for (const auto& p : code.basis_paulis()) code_images.push_back(detail::output_image(f, p));
    }

    auto classify_silent = [&](const PauliOperator& e, FaultScanEntry& entry) {
        if (harmless.contains(e)) {
            entry.cls = FaultClass::Harmless;
            return;
        }
        auto cc = augmented.member_coefficients(e);
        if (!cc) {
            entry.cls = FaultClass::UndetectedHarmful;
            return;
        }
        PauliOperator res = PauliOperator::identity(g.n_vertices);
        for (std::size_t i = tail; i < augmented.generators().size(); ++i) {
            if (cc->get(i)) res = multiply(res, augmented.generators()[i]);
        }
        entry.residual = res;
        for (const auto& img : code_images) {
            if (!res.commutes_with(img)) {
                entry.cls = FaultClass::DeferredToOutput;
                return;
            }
        }
        entry.cls = FaultClass::UndetectedHarmful;
    };

    std::vector<FaultScanEntry> out;
    for (std::size_t v = 0; v < g.n_vertices; ++v) {
        if (g.is_output(v)) continue;
        for (char letter : {'X', 'Y', 'Z'}) {
            std::size_t flips = 0;
            if (letter != g.basis.at(v)) {
                for (const auto& c : checks) {
                    if (std::binary_search(c.support.begin(), c.support.end(), v)) ++flips;
                }
            }
            FaultScanEntry e{v, letter, FaultClass::Detected, flips, std::nullopt};
            if (flips == 0) classify_silent(PauliOperator::single(g.n_vertices, v, letter), e);
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace foliate

#endif
