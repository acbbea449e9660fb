#include "rcq/spacetime.hpp"

#include <algorithm>
#include <stdexcept>

#include "rcq/clifford_sampling.hpp"
#include "rcq/parallel.hpp"

namespace rcq {

namespace {

void apply_level(PauliOperator& p, const CircuitLevel& level) {
  for (const auto& g : level.gates) {
    conjugate_inplace_2q(p, g.gate_id, g.a, g.b);
  }
}

void apply_level_inverse(PauliOperator& p, const CircuitLevel& level) {
  const auto& table = TwoQubitGateTable::instance();
  for (auto it = level.gates.rbegin(); it != level.gates.rend(); ++it) {
    conjugate_inplace_2q(p, table.inverse_id(it->gate_id), it->a, it->b);
  }
}

}  // namespace

FaultOperator FaultOperator::identity(const LocatedCircuit& circuit) {
  FaultOperator f;
  f.slices.assign(circuit.num_levels() + 1, PauliOperator(circuit.n));
  return f;
}

std::size_t FaultOperator::weight() const {
  std::size_t w = 0;
  for (const auto& s : slices) {
    w += s.weight();
  }
  return w;
}

FaultOperator& FaultOperator::operator*=(const FaultOperator& other) {
  if (slices.size() != other.slices.size()) {
    throw std::invalid_argument("fault operator slice-count mismatch");
  }
  for (std::size_t t = 0; t < slices.size(); ++t) {
    slices[t] *= other.slices[t];
  }
  return *this;
}

bool fault_anticommutes(const FaultOperator& a, const FaultOperator& b) {
  if (a.slices.size() != b.slices.size()) {
    throw std::invalid_argument("fault operator slice-count mismatch");
  }
  bool anti = false;
  for (std::size_t t = 0; t < a.slices.size(); ++t) {
    anti ^= anticommutes(a.slices[t], b.slices[t]);
  }
  return anti;
}

FaultOperator cumulant(const LocatedCircuit& circuit, const FaultOperator& f) {
  if (f.slices.size() != circuit.num_levels() + 1) {
    throw std::invalid_argument("fault/circuit size mismatch");
  }
  FaultOperator out = FaultOperator::identity(circuit);
  PauliOperator acc = f.slices[0];
  out.slices[0] = acc;
  for (std::size_t t = 1; t < f.slices.size(); ++t) {
    apply_level(acc, circuit.levels[t - 1]);
    acc *= f.slices[t];
    out.slices[t] = acc;
  }
  return out;
}

FaultOperator back_cumulant(const LocatedCircuit& circuit, const FaultOperator& f) {
  if (f.slices.size() != circuit.num_levels() + 1) {
    throw std::invalid_argument("fault/circuit size mismatch");
  }
  FaultOperator out = FaultOperator::identity(circuit);
  const std::size_t last = f.slices.size() - 1;
  PauliOperator acc = f.slices[last];
  out.slices[last] = acc;
  for (std::size_t t = last; t-- > 0;) {
    apply_level_inverse(acc, circuit.levels[t]);
    acc = f.slices[t] * acc;
    out.slices[t] = acc;
  }
  return out;
}

std::size_t SpacetimeProtocol::num_checks() const {
  std::size_t total = final_checks.size();
  for (const auto& g : readouts) {
    total += g.patterns.size();
  }
  return total;
}

std::vector<Location> SpacetimeProtocol::exposure_list() const {
  std::vector<Location> list;
  for (std::size_t level = 0; level < exposed.size(); ++level) {
    for (auto q : exposed[level]) {
      list.push_back({static_cast<std::uint32_t>(level), q});
    }
  }
  return list;
}

namespace {

// Deterministic parities of a block readout: the ideal measured block is
// |0..0> or |+..+> encoded, so Z readouts are constrained by the Z-type code
// stabilizers (plus the logical Zs of a zero-basis block) and X readouts by
// the X-type stabilizers (plus logical Xs of a plus-basis block).
std::vector<BitVec> readout_patterns(const CircuitCode& code, std::uint8_t basis,
                                     PrepBasis block_state) {
  const std::size_t n = code.num_qubits();
  std::vector<BitVec> patterns;
  auto support = [&](const PauliOperator& p, bool x_bits) {
    BitVec row(n);
    for (std::size_t q = 0; q < n; ++q) {
      if (x_bits ? p.x(q) : p.z(q)) {
        row.set(q, true);
      }
    }
    return row;
  };
  if (basis == 0) {
    for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
      if (!code.stabilizer_is_x[i]) {
        patterns.push_back(support(code.stabilizers[i], false));
      }
    }
    if (block_state == PrepBasis::zero) {
      for (const auto& lz : code.logical_z) {
        patterns.push_back(support(lz, false));
      }
    }
  } else {
    for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
      if (code.stabilizer_is_x[i]) {
        patterns.push_back(support(code.stabilizers[i], true));
      }
    }
    if (block_state == PrepBasis::plus) {
      for (const auto& lx : code.logical_x) {
        patterns.push_back(support(lx, true));
      }
    }
  }
  return patterns;
}

}  // namespace

SpacetimeProtocol build_steane_protocol(const CircuitCode& code, std::size_t q,
                                        std::size_t ec_rounds) {
  if (!code.circuit.css || code.circuit.boundary != Boundary::periodic) {
    throw std::invalid_argument("protocol needs a periodic CSS code");
  }
  if (q < 1 || ec_rounds < 1) {
    throw std::invalid_argument("protocol needs q >= 1 and ec_rounds >= 1");
  }
  SpacetimeProtocol proto;
  proto.code = code;
  proto.q = q;
  proto.ec_rounds = ec_rounds;
  const std::size_t n = code.num_qubits();
  proto.n_block = n;
  const std::size_t blocks_per_tree = std::size_t{1} << q;
  proto.circuit.n = n + ec_rounds * 2 * blocks_per_tree * n;

  proto.blocks.push_back({0, PrepBasis::zero, true});

  std::size_t bit_counter = 0;
  std::size_t check_counter = 0;

  auto add_level = [&](CircuitLevel level,
                       const std::vector<std::uint32_t>& exposed_blocks) {
    std::vector<std::uint32_t> slots;
    slots.reserve(exposed_blocks.size() * n);
    for (auto off : exposed_blocks) {
      for (std::size_t i = 0; i < n; ++i) {
        slots.push_back(off + static_cast<std::uint32_t>(i));
      }
    }
    proto.circuit.levels.push_back(std::move(level));
    proto.exposed.push_back(std::move(slots));
  };

  for (std::size_t r = 0; r < ec_rounds; ++r) {
    const std::uint32_t base =
        static_cast<std::uint32_t>(n + r * 2 * blocks_per_tree * n);
    std::vector<std::uint32_t> plus_tree, zero_tree;
    for (std::size_t b = 0; b < blocks_per_tree; ++b) {
      plus_tree.push_back(base + static_cast<std::uint32_t>(b * n));
      zero_tree.push_back(base + static_cast<std::uint32_t>((blocks_per_tree + b) * n));
      proto.blocks.push_back({plus_tree.back(), PrepBasis::plus, false});
      proto.blocks.push_back({zero_tree.back(), PrepBasis::zero, false});
    }
    std::vector<std::uint32_t> round_blocks = plus_tree;
    round_blocks.insert(round_blocks.end(), zero_tree.begin(), zero_tree.end());

    for (std::size_t layer = 0; layer < code.circuit.depth; ++layer) {
      CircuitLevel level;
      for (auto off : round_blocks) {
        for (const auto& g : code.circuit.layers[layer]) {
          level.gates.push_back({g.gate_id, off + g.a, off + g.b});
        }
      }
      add_level(std::move(level), round_blocks);
    }

    std::vector<std::vector<std::uint32_t>> alive = {plus_tree, zero_tree};
    for (std::size_t round = 1; round <= q; ++round) {
      const bool bit_check = (round % 2) == 1;
      std::vector<std::uint32_t> active;
      for (const auto& tree : alive) {
        active.insert(active.end(), tree.begin(), tree.end());
      }
      CircuitLevel cnot_level;
      for (const auto& tree : alive) {
        for (std::size_t m = 0; m + 1 < tree.size(); m += 2) {
          const std::uint32_t keep = tree[m];
          const std::uint32_t partner = tree[m + 1];
          static const std::uint16_t cnot_id =
              TwoQubitGateTable::instance().id_of(CliffordTableau::cnot(2, 0, 1));
          for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k_q = keep + static_cast<std::uint32_t>(i);
            const std::uint32_t p_q = partner + static_cast<std::uint32_t>(i);
            if (bit_check) {
              cnot_level.gates.push_back({cnot_id, k_q, p_q});
            } else {
              cnot_level.gates.push_back({cnot_id, p_q, k_q});
            }
          }
        }
      }
      add_level(std::move(cnot_level), active);

      CircuitLevel meas_level;
      const std::size_t meas_level_index = proto.circuit.levels.size();
      for (std::size_t tree_idx = 0; tree_idx < 2; ++tree_idx) {
        const PrepBasis state_basis =
            tree_idx == 0 ? PrepBasis::plus : PrepBasis::zero;
        for (std::size_t m = 0; m + 1 < alive[tree_idx].size(); m += 2) {
          const std::uint32_t partner = alive[tree_idx][m + 1];
          ReadoutGroup group;
          group.level = meas_level_index;
          group.basis = bit_check ? 0 : 1;
          group.first_qubit = partner;
          group.first_bit = bit_counter;
          group.check_offset = check_counter;
          group.patterns = readout_patterns(code, group.basis, state_basis);
          for (std::size_t i = 0; i < n; ++i) {
            meas_level.measurements.push_back(
                {partner + static_cast<std::uint32_t>(i), group.basis,
                 static_cast<std::uint32_t>(bit_counter + i)});
          }
          bit_counter += n;
          check_counter += group.patterns.size();
          proto.readouts.push_back(std::move(group));
        }
      }
      add_level(std::move(meas_level), active);
      for (auto& tree : alive) {
        std::vector<std::uint32_t> keeps;
        for (std::size_t m = 0; m + 1 < tree.size(); m += 2) {
          keeps.push_back(tree[m]);
        }
        tree = std::move(keeps);
      }
    }

    const std::uint32_t plus_surv = alive[0][0];
    const std::uint32_t zero_surv = alive[1][0];
    const std::vector<std::uint32_t> gadget = {0, plus_surv, zero_surv};
    static const std::uint16_t cnot_id =
        TwoQubitGateTable::instance().id_of(CliffordTableau::cnot(2, 0, 1));

    CircuitLevel cnot1;
    for (std::size_t i = 0; i < n; ++i) {
      cnot1.gates.push_back({cnot_id, static_cast<std::uint32_t>(i),
                             plus_surv + static_cast<std::uint32_t>(i)});
    }
    add_level(std::move(cnot1), gadget);

    CircuitLevel cnot2;
    for (std::size_t i = 0; i < n; ++i) {
      cnot2.gates.push_back({cnot_id, zero_surv + static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(i)});
    }
    add_level(std::move(cnot2), gadget);

    CircuitLevel meas;
    const std::size_t meas_level_index = proto.circuit.levels.size();
    {
      ReadoutGroup group;
      group.level = meas_level_index;
      group.basis = 0;
      group.first_qubit = plus_surv;
      group.first_bit = bit_counter;
      group.check_offset = check_counter;
      group.patterns = readout_patterns(code, 0, PrepBasis::plus);
      for (std::size_t i = 0; i < n; ++i) {
        meas.measurements.push_back({plus_surv + static_cast<std::uint32_t>(i), 0,
                                     static_cast<std::uint32_t>(bit_counter + i)});
      }
      bit_counter += n;
      check_counter += group.patterns.size();
      proto.readouts.push_back(std::move(group));
    }
    {
      ReadoutGroup group;
      group.level = meas_level_index;
      group.basis = 1;
      group.first_qubit = zero_surv;
      group.first_bit = bit_counter;
      group.check_offset = check_counter;
      group.patterns = readout_patterns(code, 1, PrepBasis::zero);
      for (std::size_t i = 0; i < n; ++i) {
        meas.measurements.push_back({zero_surv + static_cast<std::uint32_t>(i), 1,
                                     static_cast<std::uint32_t>(bit_counter + i)});
      }
      bit_counter += n;
      check_counter += group.patterns.size();
      proto.readouts.push_back(std::move(group));
    }
    add_level(std::move(meas), gadget);
  }

  proto.num_measurement_bits = bit_counter;
  for (const auto& s : code.stabilizers) {
    proto.final_checks.push_back(embed(s, proto.circuit.n, 0));
  }
  for (const auto& lx : code.logical_x) {
    proto.data_logicals.push_back(embed(lx, proto.circuit.n, 0));
  }
  for (const auto& lz : code.logical_z) {
    proto.data_logicals.push_back(embed(lz, proto.circuit.n, 0));
  }
  return proto;
}

OutcomeCode build_outcomes_impl(const SpacetimeProtocol& proto) {
  OutcomeCode oc;
  oc.bit_count = proto.num_measurement_bits + proto.final_checks.size();
  for (const auto& g : proto.readouts) {
    for (const auto& pattern : g.patterns) {
      BitVec row(oc.bit_count);
      pattern.for_each_set([&](std::size_t j) { row.set(g.first_bit + j, true); });
      oc.rows.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < proto.final_checks.size(); ++i) {
    BitVec row(oc.bit_count);
    row.set(proto.num_measurement_bits + i, true);
    oc.rows.push_back(std::move(row));
  }
  return oc;
}

OutcomeCode build_outcome_code(const SpacetimeProtocol& proto) {
  return build_outcomes_impl(proto);
}

std::vector<FaultOperator> spacetime_stabilizers(const SpacetimeProtocol& proto) {
  std::vector<FaultOperator> result;
  const std::size_t n_total = proto.circuit.n;
  for (const auto& g : proto.readouts) {
    for (const auto& pattern : g.patterns) {
      FaultOperator anchor = FaultOperator::identity(proto.circuit);
      PauliOperator pauli(n_total);
      pattern.for_each_set([&](std::size_t j) {
        if (g.basis == 0) {
          pauli.set_z(g.first_qubit + j, true);
        } else {
          pauli.set_x(g.first_qubit + j, true);
        }
      });
      anchor.slices[g.level] = std::move(pauli);
      result.push_back(back_cumulant(proto.circuit, anchor));
    }
  }
  for (const auto& s : proto.final_checks) {
    FaultOperator anchor = FaultOperator::identity(proto.circuit);
    anchor.slices[proto.circuit.num_levels()] = s;
    result.push_back(back_cumulant(proto.circuit, anchor));
  }
  return result;
}

SpacetimeDecoder::SpacetimeDecoder(const SpacetimeProtocol& proto) : proto_(&proto) {
  const std::size_t n_total = proto.circuit.n;
  const std::size_t levels = proto.circuit.num_levels();
  gate_at_.assign(levels, {});
  readout_at_.assign(levels, {});
  for (std::size_t l = 0; l < levels; ++l) {
    const auto& level = proto.circuit.levels[l];
    if (!level.gates.empty()) {
      gate_at_[l].assign(n_total, -1);
      for (std::size_t gi = 0; gi < level.gates.size(); ++gi) {
        gate_at_[l][level.gates[gi].a] = static_cast<std::int32_t>(gi);
        gate_at_[l][level.gates[gi].b] = static_cast<std::int32_t>(gi);
      }
    }
    if (!level.measurements.empty()) {
      readout_at_[l].assign(n_total, -1);
    }
  }
  group_bit_masks_.resize(proto.readouts.size());
  for (std::size_t g = 0; g < proto.readouts.size(); ++g) {
    const auto& group = proto.readouts[g];
    if (group.patterns.size() > 64) {
      throw std::invalid_argument("readout group exceeds 64 checks");
    }
    group_bit_masks_[g].assign(proto.n_block, 0);
    for (std::size_t c = 0; c < group.patterns.size(); ++c) {
      group.patterns[c].for_each_set([&](std::size_t j) {
        group_bit_masks_[g][j] |= std::uint64_t{1} << c;
      });
    }
    for (std::size_t j = 0; j < proto.n_block; ++j) {
      readout_at_[group.level][group.first_qubit + j] = static_cast<std::int32_t>(g);
    }
  }
  if (proto.final_checks.size() > 64 || proto.data_logicals.size() > 64) {
    throw std::invalid_argument("too many final checks or logicals for mask words");
  }
  final_x_mask_.assign(n_total, 0);
  final_z_mask_.assign(n_total, 0);
  for (std::size_t i = 0; i < proto.final_checks.size(); ++i) {
    const auto& s = proto.final_checks[i];
    for (std::size_t q = 0; q < n_total; ++q) {
      if (s.z(q)) {
        final_x_mask_[q] |= std::uint64_t{1} << i;
      }
      if (s.x(q)) {
        final_z_mask_[q] |= std::uint64_t{1} << i;
      }
    }
  }
  logical_x_mask_.assign(n_total, 0);
  logical_z_mask_.assign(n_total, 0);
  for (std::size_t i = 0; i < proto.data_logicals.size(); ++i) {
    const auto& lg = proto.data_logicals[i];
    for (std::size_t q = 0; q < n_total; ++q) {
      if (lg.z(q)) {
        logical_x_mask_[q] |= std::uint64_t{1} << i;
      }
      if (lg.x(q)) {
        logical_z_mask_[q] |= std::uint64_t{1} << i;
      }
    }
  }
  final_check_offset_ = proto.num_checks() - proto.final_checks.size();
}

SpacetimeDecoder::Column SpacetimeDecoder::location_column(const Location& loc,
                                                           bool is_x) const {
  const auto& proto = *proto_;
  const std::size_t n_total = proto.circuit.n;
  const auto& table = TwoQubitGateTable::instance();
  Column col;
  col.checks = BitVec(proto.num_checks());

  // Sparse conjugation state: per-qubit byte with bit0 = x, bit1 = z and
  // bit7 = "already in the touched list".
  std::vector<std::uint8_t> xz(n_total, 0);
  std::vector<std::uint32_t> touched;
  xz[loc.qubit] = static_cast<std::uint8_t>((is_x ? 1 : 2) | 0x80);
  touched.push_back(loc.qubit);
  std::vector<std::uint64_t> group_words(proto.readouts.size(), 0);
  std::uint64_t final_word = 0;

  std::vector<std::uint32_t> gate_scratch;
  for (std::size_t l = loc.slice; l < proto.circuit.num_levels(); ++l) {
    const auto& level = proto.circuit.levels[l];
    if (!level.measurements.empty()) {
      const auto& lookup = readout_at_[l];
      for (auto q : touched) {
        const std::int32_t g = lookup[q];
        if (g < 0) {
          continue;
        }
        const auto& group = proto.readouts[static_cast<std::size_t>(g)];
        const std::uint8_t bits = xz[q] & 3;
        const bool flip = group.basis == 0 ? (bits & 1) : (bits >> 1) & 1;
        if (flip) {
          group_words[static_cast<std::size_t>(g)] ^=
              group_bit_masks_[static_cast<std::size_t>(g)][q - group.first_qubit];
        }
      }
      continue;
    }
    if (level.gates.empty()) {
      continue;
    }
    const auto& lookup = gate_at_[l];
    gate_scratch.clear();
    for (auto q : touched) {
      if ((xz[q] & 3) && lookup[q] >= 0) {
        gate_scratch.push_back(static_cast<std::uint32_t>(lookup[q]));
      }
    }
    std::sort(gate_scratch.begin(), gate_scratch.end());
    gate_scratch.erase(std::unique(gate_scratch.begin(), gate_scratch.end()),
                       gate_scratch.end());
    for (auto gi : gate_scratch) {
      const auto& g = level.gates[gi];
      const std::uint8_t in =
          static_cast<std::uint8_t>((xz[g.a] & 3) | ((xz[g.b] & 3) << 2));
      if (in == 0) {
        continue;
      }
      const std::uint8_t out = table.conj_entry(g.gate_id, in);
      xz[g.a] = static_cast<std::uint8_t>((xz[g.a] & 0x80) | (out & 3));
      xz[g.b] = static_cast<std::uint8_t>((xz[g.b] & 0x80) | ((out >> 2) & 3));
      if ((xz[g.a] & 0x80) == 0) {
        xz[g.a] |= 0x80;
        touched.push_back(g.a);
      }
      if ((xz[g.b] & 0x80) == 0) {
        xz[g.b] |= 0x80;
        touched.push_back(g.b);
      }
    }
  }

  for (auto q : touched) {
    const std::uint8_t bits = xz[q] & 3;
    if (bits & 1) {
      final_word ^= final_x_mask_[q];
      col.logicals ^= logical_x_mask_[q];
    }
    if (bits & 2) {
      final_word ^= final_z_mask_[q];
      col.logicals ^= logical_z_mask_[q];
    }
  }

  for (std::size_t g = 0; g < group_words.size(); ++g) {
    std::uint64_t w = group_words[g];
    while (w) {
      const unsigned c = static_cast<unsigned>(std::countr_zero(w));
      col.checks.set(proto.readouts[g].check_offset + c, true);
      w &= w - 1;
    }
  }
  std::uint64_t w = final_word;
  while (w) {
    const unsigned c = static_cast<unsigned>(std::countr_zero(w));
    col.checks.set(final_check_offset_ + c, true);
    w &= w - 1;
  }
  return col;
}

BitVec SpacetimeDecoder::syndrome_of(const SampledFault& fault) const {
  BitVec s(proto_->num_checks());
  for (std::size_t i = 0; i < fault.locations.size(); ++i) {
    if (fault.xz[i] & 1) {
      s ^= location_column(fault.locations[i], true).checks;
    }
    if (fault.xz[i] & 2) {
      s ^= location_column(fault.locations[i], false).checks;
    }
  }
  return s;
}

std::uint64_t SpacetimeDecoder::logical_flips_of(const SampledFault& fault) const {
  std::uint64_t flips = 0;
  for (std::size_t i = 0; i < fault.locations.size(); ++i) {
    if (fault.xz[i] & 1) {
      flips ^= location_column(fault.locations[i], true).logicals;
    }
    if (fault.xz[i] & 2) {
      flips ^= location_column(fault.locations[i], false).logicals;
    }
  }
  return flips;
}

ErasureDecodeResult erasure_decode(const SpacetimeDecoder& decoder, const BitVec& s,
                                   std::span<const Location> erased) {
  struct Pivot {
    std::size_t row;
    BitVec col;
    BitVec combo;
  };
  const std::size_t unknowns = 2 * erased.size();
  std::vector<Pivot> pivots;
  pivots.reserve(unknowns);
  for (std::size_t j = 0; j < unknowns; ++j) {
    const Location& loc = erased[j / 2];
    const bool is_x = (j % 2) == 0;
    BitVec cur = decoder.location_column(loc, is_x).checks;
    BitVec combo(unknowns);
    combo.set(j, true);
    for (const auto& piv : pivots) {
      if (cur.get(piv.row)) {
        cur ^= piv.col;
        combo ^= piv.combo;
      }
    }
    if (cur.any()) {
      pivots.push_back({cur.lowest_set(), std::move(cur), std::move(combo)});
    }
  }
  BitVec rem = s;
  BitVec solution(unknowns);
  for (const auto& piv : pivots) {
    if (rem.get(piv.row)) {
      rem ^= piv.col;
      solution ^= piv.combo;
    }
  }
  ErasureDecodeResult result;
  if (rem.any()) {
    return result;  // inconsistent: FAIL
  }
  result.ok = true;
  for (std::size_t i = 0; i < erased.size(); ++i) {
    const std::uint8_t bits = static_cast<std::uint8_t>(
        (solution.get(2 * i) ? 1 : 0) | (solution.get(2 * i + 1) ? 2 : 0));
    if (bits) {
      result.fault.locations.push_back(erased[i]);
      result.fault.xz.push_back(bits);
    }
  }
  return result;
}

std::vector<std::uint8_t> simulate_protocol(const SpacetimeProtocol& proto,
                                            const SampledFault& injections, Rng& rng) {
  const std::size_t n_total = proto.circuit.n;
  std::string roles;
  roles.assign(n_total, '0');
  for (const auto& block : proto.blocks) {
    for (std::size_t i = 0; i < proto.n_block; ++i) {
      const Role role = proto.code.layout.roles[i];
      char c = '0';
      if (role == Role::x_stabilizer) {
        c = '+';
      } else if (role == Role::logical) {
        c = block.basis == PrepBasis::plus ? '+' : '0';
      }
      roles[block.offset + i] = c;
    }
  }
  MixedStabilizerState state = MixedStabilizerState::product(roles);
  for (const auto& block : proto.blocks) {
    if (!block.pre_encoded) {
      continue;
    }
    for (const auto& layer : proto.code.circuit.layers) {
      for (const auto& g : layer) {
        state.apply_gate(g.gate_id, block.offset + g.a, block.offset + g.b);
      }
    }
  }

  // Injections grouped by slice.
  std::vector<std::vector<std::size_t>> by_slice(proto.circuit.num_levels() + 1);
  for (std::size_t i = 0; i < injections.locations.size(); ++i) {
    by_slice[injections.locations[i].slice].push_back(i);
  }
  auto inject = [&](std::size_t slice) {
    for (auto i : by_slice[slice]) {
      PauliOperator p(n_total);
      p.set_x(injections.locations[i].qubit, injections.xz[i] & 1);
      p.set_z(injections.locations[i].qubit, (injections.xz[i] >> 1) & 1);
      state.apply_pauli(p);
    }
  };

  std::vector<std::uint8_t> bits(proto.num_measurement_bits +
                                 proto.final_checks.size());
  for (std::size_t l = 0; l < proto.circuit.num_levels(); ++l) {
    inject(l);
    const auto& level = proto.circuit.levels[l];
    for (const auto& m : level.measurements) {
      const PauliOperator obs =
          PauliOperator::single(n_total, m.qubit, m.basis == 0 ? 'Z' : 'X');
      bits[m.bit_index] = state.measure_pauli(obs, rng).outcome < 0 ? 1 : 0;
    }
    for (const auto& g : level.gates) {
      state.apply_gate(g.gate_id, g.a, g.b);
    }
  }
  inject(proto.circuit.num_levels());
  for (std::size_t i = 0; i < proto.final_checks.size(); ++i) {
    bits[proto.num_measurement_bits + i] =
        state.measure_pauli(proto.final_checks[i], rng).outcome < 0 ? 1 : 0;
  }
  return bits;
}

ExperimentRecord decode_experiment(const SpacetimeExperimentConfig& config) {
  std::vector<std::size_t> qs = config.qs;
  if (qs.empty()) {
    qs = config.depths;
  }
  if (qs.size() != config.depths.size()) {
    throw std::invalid_argument("depths and qs must align");
  }
  const std::size_t points = config.depths.size() * config.p_grid.size();
  std::vector<std::vector<double>> values(points,
                                          std::vector<double>(config.trials, 0.0));
  run_trials(points * config.trials, config.workers, [&](std::size_t idx) {
    const std::size_t point = idx / config.trials;
    const std::size_t t = idx % config.trials;
    const std::size_t d_idx = point / config.p_grid.size();
    const double p = config.p_grid[point % config.p_grid.size()];
    Rng rng(config.seed, idx);
    const CodeParams params{config.n, config.rate, config.depths[d_idx],
                            Boundary::periodic, true};
    CircuitCode code = sample_circuit_code(params, rng);
    SpacetimeProtocol proto = build_steane_protocol(code, qs[d_idx], config.ec_rounds);
    SpacetimeDecoder decoder(proto);

    SampledFault fault;
    std::vector<Location> erased;
    for (std::size_t l = 0; l < proto.exposed.size(); ++l) {
      for (auto q : proto.exposed[l]) {
        if (rng.bernoulli(p)) {
          erased.push_back({static_cast<std::uint32_t>(l), q});
        }
      }
    }
    for (const auto& loc : erased) {
      // uniform X, Y, Z
      static constexpr std::uint8_t kPauliBits[3] = {1, 3, 2};
      fault.locations.push_back(loc);
      fault.xz.push_back(kPauliBits[rng.bounded(3)]);
    }

    // Columns double as the syndrome source and the solve matrix.
    BitVec s(proto.num_checks());
    std::uint64_t true_logicals = 0;
    std::vector<SpacetimeDecoder::Column> col_x, col_z;
    col_x.reserve(erased.size());
    col_z.reserve(erased.size());
    for (std::size_t i = 0; i < erased.size(); ++i) {
      col_x.push_back(decoder.location_column(erased[i], true));
      col_z.push_back(decoder.location_column(erased[i], false));
      if (fault.xz[i] & 1) {
        s ^= col_x[i].checks;
        true_logicals ^= col_x[i].logicals;
      }
      if (fault.xz[i] & 2) {
        s ^= col_z[i].checks;
        true_logicals ^= col_z[i].logicals;
      }
    }

    struct Pivot {
      std::size_t row;
      BitVec col;
      BitVec combo;
      std::uint64_t logicals;
    };
    const std::size_t unknowns = 2 * erased.size();
    std::vector<Pivot> pivots;
    for (std::size_t j = 0; j < unknowns; ++j) {
      const auto& column = (j % 2) == 0 ? col_x[j / 2] : col_z[j / 2];
      BitVec cur = column.checks;
      BitVec combo(unknowns);
      combo.set(j, true);
      std::uint64_t logicals = column.logicals;
      for (const auto& piv : pivots) {
        if (cur.get(piv.row)) {
          cur ^= piv.col;
          combo ^= piv.combo;
          logicals ^= piv.logicals;
        }
      }
      if (cur.any()) {
        pivots.push_back({cur.lowest_set(), std::move(cur), std::move(combo), logicals});
      }
    }
    BitVec rem = s;
    std::uint64_t decoded_logicals = 0;
    for (const auto& piv : pivots) {
      if (rem.get(piv.row)) {
        rem ^= piv.col;
        decoded_logicals ^= piv.logicals;
      }
    }
    if (rem.any()) {
      throw std::logic_error("erasure decode failed on consistent noise");
    }
    values[point][t] = (true_logicals ^ decoded_logicals) != 0 ? 1.0 : 0.0;
  });
  ExperimentRecord record;
  record.kind = "spacetime";
  record.seed = config.seed;
  record.batch_count = config.batch_count;
  record.config = nlohmann::json{
      {"n", config.n},           {"rate", config.rate},
      {"depths", config.depths}, {"qs", qs},
      {"ec_rounds", config.ec_rounds}, {"p_grid", config.p_grid},
      {"trials", config.trials}, {"seed", config.seed},
      {"batch_count", config.batch_count},
  };
  record.config_hash = config_hash(record.config);
  for (std::size_t d_idx = 0; d_idx < config.depths.size(); ++d_idx) {
    for (std::size_t p_idx = 0; p_idx < config.p_grid.size(); ++p_idx) {
      record.points.push_back(
          make_point(config.p_grid[p_idx], static_cast<double>(config.depths[d_idx]),
                     values[d_idx * config.p_grid.size() + p_idx],
                     config.batch_count));
    }
  }
  return record;
}

}  // namespace rcq
