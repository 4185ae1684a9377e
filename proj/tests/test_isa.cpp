#include <random>
#include <set>

#include "doctest.h"
#include "qaut/isa.hpp"
#include "test_helpers.hpp"

using namespace qaut;

namespace {

const LatticeSpec kChain4{{4, 1, 1}};

Program gate_only_program(const LatticeSpec& spec, std::vector<Instruction> instrs) {
    Program p;
    p.spec = spec;
    p.instructions = std::move(instrs);
    return p;
}

}  // namespace

TEST_CASE("macro_shift emits the three stages, reversed for the inverse") {
    auto fwd = macro_shift(Axis::X, 1, kChain4);
    REQUIRE(fwd.size() == 3);
    CHECK(std::get<GlobalSwapInstr>(fwd[0]).pair == SpeciesPair::AB);
    CHECK(std::get<GlobalSwapInstr>(fwd[1]).pair == SpeciesPair::BC);
    CHECK(std::get<GlobalSwapInstr>(fwd[2]).pair == SpeciesPair::CA);

    auto bwd = macro_shift(Axis::X, -1, kChain4);
    CHECK(std::get<GlobalSwapInstr>(bwd[0]).pair == SpeciesPair::CA);
    CHECK(std::get<GlobalSwapInstr>(bwd[1]).pair == SpeciesPair::BC);
    CHECK(std::get<GlobalSwapInstr>(bwd[2]).pair == SpeciesPair::AB);

    CHECK_THROWS_AS(macro_shift(Axis::Y, 1, kChain4), std::invalid_argument);
}

TEST_CASE("stage pairing partitions the two species") {
    for (LatticeSpec spec : {LatticeSpec{{4, 1, 1}}, LatticeSpec{{2, 2, 1}}, LatticeSpec{{3, 2, 2}}}) {
        for (Axis axis : kAxes) {
            if (!spec.axis_active(axis)) continue;
            for (SpeciesPair pair : {SpeciesPair::AB, SpeciesPair::BC, SpeciesPair::CA}) {
                auto pairs = stage_pairs(spec, axis, pair);
                CHECK(pairs.size() == static_cast<std::size_t>(spec.site_count() / 3));
                std::set<std::int64_t> seen;
                auto first = static_cast<Species>(static_cast<int>(pair));
                auto second = static_cast<Species>((static_cast<int>(pair) + 1) % 3);
                for (const auto& [p, q] : pairs) {
                    CHECK(species_at(p) == first);
                    CHECK(species_at(q) == second);
                    CHECK(seen.insert(site_index(spec, p)).second);
                    CHECK(seen.insert(site_index(spec, q)).second);
                }
                CHECK(seen.size() == static_cast<std::size_t>(2 * spec.site_count() / 3));
            }
        }
    }
}

TEST_CASE("one macro shift translates cell contents by one cell") {
    // chain of 12 sites: content at site 0 ends at site 3
    auto stream = macro_shift(Axis::X, 1, kChain4);
    auto perm = qaut::testing::stream_permutation(stream, kChain4);
    CHECK(perm[0] == 3);
    CHECK(perm[3] == 6);
    CHECK(perm[9] == 0);  // wraps

    // the -1 shift is the exact inverse
    auto inverse = macro_shift(Axis::X, -1, kChain4);
    for (const auto& instr : inverse) stream.push_back(instr);
    CHECK(qaut::testing::is_identity_permutation(
        qaut::testing::stream_permutation(stream, kChain4)));
}

TEST_CASE("pulse events per instruction") {
    CHECK(pulse_events(GlobalSwapInstr{Axis::X, SpeciesPair::AB}, kChain4) == 6);
    CHECK(pulse_events(SwapDAInstr{}, kChain4) == 3);
    CHECK(pulse_events(Local1QInstr{LocalTarget::A0, {}}, kChain4) == 1);
    CHECK(pulse_events(CondDAInstr{CondKind::CZ}, kChain4) == 1);
    CHECK(pulse_events(MeasureDInstr{0}, kChain4) == 0);
}

TEST_CASE("the detuned pulse set stays required at radius zero") {
    LatticeSpec r0 = kChain4;
    r0.detune_radius = 0;
    CHECK(pulse_set_count(r0) == 2);  // the home site itself is detuned
    CHECK(pulse_events(GlobalSwapInstr{Axis::X, SpeciesPair::AB}, r0) == 6);
    // a hypothetical extra pulse set is billable
    CHECK(pulse_events(GlobalSwapInstr{Axis::X, SpeciesPair::AB}, r0, 3) == 9);
}

TEST_CASE("cost of small programs") {
    auto empty = cost(gate_only_program(kChain4, {}));
    CHECK(empty.pulse_events_total == 0);
    CHECK(empty.macro_shift_count == 0);
    CHECK(empty.cnot_equivalents == 0);
    CHECK(empty.measurement_events == 0);
    CHECK(empty.per_channel.empty());

    auto one_shift = cost(gate_only_program(kChain4, macro_shift(Axis::X, 1, kChain4)));
    CHECK(one_shift.pulse_events_total == 18);
    CHECK(one_shift.macro_shift_count == 1);
    CHECK(one_shift.cnot_equivalents == 9);
    CHECK(one_shift.per_channel.at("global.x.AB.standard") == 3);
    CHECK(one_shift.per_channel.at("global.x.AB.detuned") == 3);

    auto swap_cz_swap = cost(gate_only_program(
        kChain4, {SwapDAInstr{}, CondDAInstr{CondKind::CZ}, SwapDAInstr{}}));
    CHECK(swap_cz_swap.pulse_events_total == 7);
    CHECK(swap_cz_swap.cnot_equivalents == 7);
}

TEST_CASE("channel billing agrees with the closed-form pulse counts") {
    std::vector<Instruction> samples{
        GlobalSwapInstr{Axis::X, SpeciesPair::BC}, Local1QInstr{LocalTarget::D, {1, 2, 3, 0}},
        Local1QInstr{LocalTarget::A0, {}},         CondDAInstr{CondKind::CnotAControlsD},
        SwapDAInstr{},                             MeasureDInstr{0}};
    for (int sets : {1, 2, 3}) {
        for (const auto& instr : samples) {
            int billed = 0;
            for (const auto& [channel, pulses] : pulse_billing(instr, kChain4, sets)) {
                billed += pulses;
            }
            CHECK(billed == pulse_events(instr, kChain4, sets));
        }
    }
    auto channels = pulse_billing(GlobalSwapInstr{Axis::X, SpeciesPair::BC}, kChain4, 2);
    REQUIRE(channels.size() == 2);
    CHECK(channels[0].first.name() == "global.x.BC.standard");
    CHECK(channels[1].first.name() == "global.x.BC.detuned");
    CHECK(channels[0].first != channels[1].first);
}

TEST_CASE("pulse totals equal the per-channel sum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Instruction> instrs;
        for (int i = 0; i < 30; ++i) {
            switch (rng() % 4) {
                case 0: {
                    auto shift = macro_shift(Axis::X, rng() % 2 ? 1 : -1, kChain4);
                    instrs.insert(instrs.end(), shift.begin(), shift.end());
                    break;
                }
                case 1: instrs.push_back(SwapDAInstr{}); break;
                case 2: instrs.push_back(Local1QInstr{LocalTarget::A0, {0.1, 0.2, 0.3, 0.0}}); break;
                default: instrs.push_back(CondDAInstr{CondKind::CnotDControlsA}); break;
            }
        }
        auto report = cost(gate_only_program(kChain4, instrs));
        std::int64_t channel_sum = 0;
        for (const auto& [name, count] : report.per_channel) channel_sum += count;
        CHECK(report.pulse_events_total == channel_sum);
    }
}

TEST_CASE("cost is additive over concatenation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Instruction> a, b;
        auto fill = [&](std::vector<Instruction>& v) {
            for (int i = 0; i < 12; ++i) {
                if (rng() % 2) {
                    auto shift = macro_shift(Axis::X, rng() % 2 ? 1 : -1, kChain4);
                    v.insert(v.end(), shift.begin(), shift.end());
                } else {
                    v.push_back(rng() % 2 ? Instruction(SwapDAInstr{})
                                          : Instruction(CondDAInstr{CondKind::CZ}));
                }
            }
        };
        fill(a);
        fill(b);
        std::vector<Instruction> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        auto ra = cost(gate_only_program(kChain4, a));
        auto rb = cost(gate_only_program(kChain4, b));
        auto rab = cost(gate_only_program(kChain4, ab));
        CHECK(rab.pulse_events_total == ra.pulse_events_total + rb.pulse_events_total);
        CHECK(rab.cnot_equivalents == ra.cnot_equivalents + rb.cnot_equivalents);
        CHECK(rab.macro_shift_count == ra.macro_shift_count + rb.macro_shift_count);
    }
}

TEST_CASE("cost rejects malformed programs with the offending index") {
    auto degenerate = gate_only_program(kChain4, {SwapDAInstr{},
                                                  GlobalSwapInstr{Axis::Z, SpeciesPair::AB}});
    CHECK_THROWS_WITH_AS(cost(degenerate), doctest::Contains("instruction 1"), ProgramError);

    Program reused = gate_only_program(kChain4, {MeasureDInstr{0}, MeasureDInstr{0}});
    reused.measurement_count = 2;
    try {
        cost(reused);
        FAIL("expected ProgramError");
    } catch (const ProgramError& e) {
        CHECK(e.index == 1);
    }

    Program home = gate_only_program(kChain4, {});
    home.qubit_map[0] = Cell{0, 0, 0};
    CHECK_THROWS_AS(cost(home), ProgramError);
}

TEST_CASE("euler angles reconstruct every gate matrix") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-7, 7);

    auto check_round_trip = [](const Mat2& u) {
        auto e = euler_from_matrix(u);
        CHECK(max_abs_diff(matrix_from_euler(e), u) <= 1e-12);
    };

    for (Gate1Q g : {Gate1Q::H, Gate1Q::X, Gate1Q::Y, Gate1Q::Z, Gate1Q::S, Gate1Q::T}) {
        check_round_trip(gate_matrix(OneQOp{g, 0, {}}));
    }
    for (int trial = 0; trial < 200; ++trial) {
        check_round_trip(gate_matrix(OneQOp{Gate1Q::U3, 0, {angle(rng), angle(rng), angle(rng)}}));
        check_round_trip(gate_matrix(OneQOp{Gate1Q::RZ, 0, {angle(rng)}}));
    }

    // hadamard lands on the textbook Z-Y-Z angles
    auto e = euler_from_matrix(gate_matrix(OneQOp{Gate1Q::H, 0, {}}));
    CHECK(e.alpha == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.beta == doctest::Approx(1.5707963267948966));
    CHECK(e.gamma == doctest::Approx(3.14159265358979323846));
    CHECK(e.phase == doctest::Approx(1.5707963267948966));

    CHECK_THROWS_AS(euler_from_matrix(Mat2{{Complex(1), Complex(1), Complex(0), Complex(1)}}),
                    std::invalid_argument);
}
