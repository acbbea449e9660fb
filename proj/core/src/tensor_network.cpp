#include "rcq/tensor_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcq {

LatticeTensorNetwork build_tensor_network(const SpinModel& model, Semiring semiring) {
  const std::size_t num_terms = model.terms.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first(model.num_spins, kNone);
  std::vector<std::size_t> last(model.num_spins, kNone);
  for (std::size_t u = 0; u < num_terms; ++u) {
    for (auto s : model.terms[u].spins) {
      if (first[s] == kNone) {
        first[s] = u;
      }
      last[s] = u;
    }
  }

  LatticeTensorNetwork net;
  net.semiring = semiring;
  net.num_spins = model.num_spins;
  for (std::size_t s = 0; s < model.num_spins; ++s) {
    if (first[s] == kNone) {
      ++net.free_spins;
    }
  }
  net.columns.resize(num_terms);

  std::vector<std::uint16_t> slot_of(model.num_spins, 0);
  std::vector<std::uint32_t> frontier;  // spin id per slot
  for (std::size_t u = 0; u < num_terms; ++u) {
    auto& col = net.columns[u];
    col.sign = model.terms[u].sign;
    for (auto s : model.terms[u].spins) {
      if (first[s] == u) {
        if (frontier.size() >= 64) {
          throw std::invalid_argument("tensor network frontier exceeds 64 chains");
        }
        slot_of[s] = static_cast<std::uint16_t>(frontier.size());
        frontier.push_back(s);
        col.activation_spins.push_back(s);
        ++col.activations;
      }
    }
    net.height = std::max(net.height, frontier.size());
    col.incident_mask = 0;
    for (auto s : model.terms[u].spins) {
      col.incident_mask |= std::uint64_t{1} << slot_of[s];
    }
    // Retire chains ending at this column, highest slot first so earlier
    // removals do not disturb later slot indices.
    std::vector<LatticeTensorNetwork::Retirement> retire;
    for (auto s : model.terms[u].spins) {
      if (last[s] == u) {
        retire.push_back({slot_of[s], s});
      }
    }
    std::sort(retire.begin(), retire.end(),
              [](const auto& a, const auto& b) { return a.slot > b.slot; });
    for (const auto& r : retire) {
      frontier.erase(frontier.begin() + r.slot);
      for (std::size_t i = r.slot; i < frontier.size(); ++i) {
        slot_of[frontier[i]] = static_cast<std::uint16_t>(i);
      }
    }
    col.retirements = std::move(retire);
  }
  return net;
}

namespace {

// Removes bit `slot` from idx, compressing higher bits down.
inline std::uint64_t drop_bit(std::uint64_t idx, unsigned slot) {
  const std::uint64_t low = idx & ((std::uint64_t{1} << slot) - 1);
  return low | ((idx >> (slot + 1)) << slot);
}

// Inserts bit value v at position `slot`.
inline std::uint64_t insert_bit(std::uint64_t idx, unsigned slot, std::uint64_t v) {
  const std::uint64_t low = idx & ((std::uint64_t{1} << slot) - 1);
  return low | (v << slot) | ((idx >> slot) << (slot + 1));
}

}  // namespace

double contract_partition(const LatticeTensorNetwork& network, double beta_j) {
  if (network.semiring != Semiring::real_log_domain) {
    throw std::invalid_argument("contract_partition needs a real-semiring network");
  }
  std::vector<double> values{1.0};
  std::vector<double> scratch;
  double log_scale = 0.0;
  for (const auto& col : network.columns) {
    for (std::uint16_t a = 0; a < col.activations; ++a) {
      const std::size_t sz = values.size();
      values.resize(2 * sz);
      std::copy_n(values.begin(), sz, values.begin() + static_cast<std::ptrdiff_t>(sz));
    }
    const double w_plus = std::exp(-beta_j * col.sign);
    const double w_minus = std::exp(beta_j * col.sign);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      const bool flip = std::popcount(idx & col.incident_mask) & 1;
      values[idx] *= flip ? w_minus : w_plus;
    }
    for (const auto& r : col.retirements) {
      const std::size_t half = values.size() / 2;
      scratch.resize(half);
      for (std::size_t idx = 0; idx < half; ++idx) {
        scratch[idx] = values[insert_bit(idx, r.slot, 0)] +
                       values[insert_bit(idx, r.slot, 1)];
      }
      values.swap(scratch);
    }
    double peak = 0.0;
    for (double v : values) {
      peak = std::max(peak, v);
    }
    if (!(peak > 0.0) || !std::isfinite(peak)) {
      throw std::overflow_error("partition contraction lost numeric range");
    }
    for (double& v : values) {
      v /= peak;
    }
    log_scale += std::log(peak);
  }
  if (values.size() != 1) {
    throw std::logic_error("unretired chains after contraction");
  }
  return log_scale + std::log(values[0]) +
         static_cast<double>(network.free_spins) * std::log(2.0);
}

TropicalResult contract_tropical(const LatticeTensorNetwork& network) {
  if (network.semiring != Semiring::tropical) {
    throw std::invalid_argument("contract_tropical needs a tropical network");
  }
  struct RetireRecord {
    std::uint32_t spin;
    std::vector<std::uint32_t> frontier_after;  // spin ids per slot
    std::vector<std::uint64_t> argmin;          // bit per post-retirement index
  };
  std::vector<RetireRecord> records;
  std::vector<std::uint32_t> frontier;
  std::vector<double> values{0.0};
  std::vector<double> scratch;
  for (const auto& col : network.columns) {
    for (auto spin : col.activation_spins) {
      frontier.push_back(spin);
      const std::size_t sz = values.size();
      values.resize(2 * sz);
      std::copy_n(values.begin(), sz, values.begin() + static_cast<std::ptrdiff_t>(sz));
    }
    // Tropical boundary tensor: energy -sign*J*prod (the beta*J -> -inf limit
    // of the Gibbs weight along the Nishimori ray).
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      const bool flip = std::popcount(idx & col.incident_mask) & 1;
      values[idx] += flip ? col.sign : -col.sign;
    }
    for (const auto& r : col.retirements) {
      const std::size_t half = values.size() / 2;
      scratch.resize(half);
      RetireRecord rec;
      rec.spin = r.spin;
      rec.argmin.assign((half + 63) / 64, 0);
      for (std::size_t idx = 0; idx < half; ++idx) {
        const double v0 = values[insert_bit(idx, r.slot, 0)];
        const double v1 = values[insert_bit(idx, r.slot, 1)];
        // min with ties to the unflipped (+1, bit 0) branch
        if (v1 < v0) {
          scratch[idx] = v1;
          rec.argmin[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        } else {
          scratch[idx] = v0;
        }
      }
      values.swap(scratch);
      frontier.erase(frontier.begin() + r.slot);
      rec.frontier_after = frontier;
      records.push_back(std::move(rec));
    }
  }
  if (values.size() != 1) {
    throw std::logic_error("unretired chains after contraction");
  }
  TropicalResult result;
  result.energy = values[0];
  result.spin_values.assign(network.num_spins, 1);
  // Walk the retirement records backwards; every spin in a record's frontier
  // retired later, so its value is already known when the record is visited.
  std::vector<std::uint8_t> bit_of(network.num_spins, 0);
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    std::uint64_t idx = 0;
    for (std::size_t slot = 0; slot < it->frontier_after.size(); ++slot) {
      idx |= static_cast<std::uint64_t>(bit_of[it->frontier_after[slot]]) << slot;
    }
    const std::uint8_t bit =
        (it->argmin[idx >> 6] >> (idx & 63)) & 1;
    bit_of[it->spin] = bit;
    result.spin_values[it->spin] = bit ? -1 : 1;
  }
  return result;
}

}  // namespace rcq
