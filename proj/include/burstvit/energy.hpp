#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace burstvit {

// Per-layer operation counters. sop = spike-triggered accumulates, sign =
// nonzero spike emission events (a burst of level 3 counts once), mac =
// float multiply-accumulates (analog stem input and the classifier head).
struct OpCounts {
  unsigned long long sop = 0;
  unsigned long long sign = 0;
  unsigned long long mac = 0;
};

// Firing-rate and accumulate-count bookkeeping for one attention instance.
struct AttnStats {
  double q_sum = 0.0;  // total Q spikes (binary)
  double k_sum = 0.0;  // total K spikes, burst multiplicity included
  unsigned long long q_numel = 0;
  unsigned long long k_numel = 0;
  unsigned long long sim_ac = 0;        // similarity-stage accumulates
  unsigned long long agg_ac = 0;        // aggregation-stage accumulates, as executed
  unsigned long long agg_ac_dense = 0;  // what aggregation would cost without the mask
  long tokens = 0;
  long feat_dim = 0;
  long timesteps = 0;
};

class EnergyLedger {
 public:
  static constexpr double kJoulesPerSop = 77e-15;    // 77 fJ
  static constexpr double kJoulesPerSign = 3.7e-12;  // 3.7 pJ

  OpCounts& layer(const std::string& name);
  AttnStats& attn(const std::string& name);

  const std::vector<std::pair<std::string, OpCounts>>& layers() const { return layers_; }
  const std::vector<std::pair<std::string, AttnStats>>& attn_layers() const { return attn_; }

  unsigned long long total_sops() const;
  unsigned long long total_signs() const;
  unsigned long long total_macs() const;

  void reset();                          // zero counts, keep layer structure
  void merge(const EnergyLedger& other); // commutative sum by layer name

 private:
  std::vector<std::pair<std::string, OpCounts>> layers_;
  std::vector<std::pair<std::string, AttnStats>> attn_;
};

// E_total = N_SOP * 77fJ + N_Sign * 3.7pJ, in joules. Float MACs are
// tallied but excluded.
double estimate_energy(unsigned long long n_sop, unsigned long long n_sign);
double estimate_energy(const EnergyLedger& ledger);

namespace prof {

// Dynamic guard for the addition-only contract: while a TrapScope is alive,
// every float*float multiply routed through traced_mul is recorded as a
// violation against that scope. The spike-matrix kernels run inside a scope
// and perform no float multiplies; float paths (matmul_float, conv, softmax
// attention, scaling) all route through traced_mul so a miswired kernel
// shows up immediately.
struct TrapRecord {
  std::string scope;
  unsigned long long violations = 0;
};

bool trap_active();
void record_mul();

class TrapScope {
 public:
  explicit TrapScope(std::string name);
  ~TrapScope();
  TrapScope(const TrapScope&) = delete;
  TrapScope& operator=(const TrapScope&) = delete;
};

inline double traced_mul(double a, double b) {
  if (trap_active()) record_mul();
  return a * b;
}

std::vector<TrapRecord> trap_report();
unsigned long long trap_violations();
void reset_traps();

}  // namespace prof

}  // namespace burstvit
