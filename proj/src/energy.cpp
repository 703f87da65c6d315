#include "burstvit/energy.hpp"

#include <algorithm>

namespace burstvit {

OpCounts& EnergyLedger::layer(const std::string& name) {
  for (auto& kv : layers_)
    if (kv.first == name) return kv.second;
  layers_.emplace_back(name, OpCounts{});
  return layers_.back().second;
}

AttnStats& EnergyLedger::attn(const std::string& name) {
  for (auto& kv : attn_)
    if (kv.first == name) return kv.second;
  attn_.emplace_back(name, AttnStats{});
  return attn_.back().second;
}

unsigned long long EnergyLedger::total_sops() const {
  unsigned long long s = 0;
  for (const auto& kv : layers_) s += kv.second.sop;
  return s;
}

unsigned long long EnergyLedger::total_signs() const {
  unsigned long long s = 0;
  for (const auto& kv : layers_) s += kv.second.sign;
  return s;
}

unsigned long long EnergyLedger::total_macs() const {
  unsigned long long s = 0;
  for (const auto& kv : layers_) s += kv.second.mac;
  return s;
}

void EnergyLedger::reset() {
  for (auto& kv : layers_) kv.second = OpCounts{};
  for (auto& kv : attn_) kv.second = AttnStats{};
}

void EnergyLedger::merge(const EnergyLedger& other) {
  for (const auto& kv : other.layers_) {
    OpCounts& c = layer(kv.first);
    c.sop += kv.second.sop;
    c.sign += kv.second.sign;
    c.mac += kv.second.mac;
  }
  for (const auto& kv : other.attn_) {
    AttnStats& a = attn(kv.first);
    a.q_sum += kv.second.q_sum;
    a.k_sum += kv.second.k_sum;
    a.q_numel += kv.second.q_numel;
    a.k_numel += kv.second.k_numel;
    a.sim_ac += kv.second.sim_ac;
    a.agg_ac += kv.second.agg_ac;
    a.agg_ac_dense += kv.second.agg_ac_dense;
    a.tokens = std::max(a.tokens, kv.second.tokens);
    a.feat_dim = std::max(a.feat_dim, kv.second.feat_dim);
    a.timesteps = std::max(a.timesteps, kv.second.timesteps);
  }
}

double estimate_energy(unsigned long long n_sop, unsigned long long n_sign) {
  return static_cast<double>(n_sop) * EnergyLedger::kJoulesPerSop +
         static_cast<double>(n_sign) * EnergyLedger::kJoulesPerSign;
}

double estimate_energy(const EnergyLedger& ledger) {
  return estimate_energy(ledger.total_sops(), ledger.total_signs());
}

namespace prof {

namespace {
thread_local std::vector<std::string>* g_scope_stack = nullptr;
thread_local std::vector<TrapRecord>* g_records = nullptr;

std::vector<std::string>& scope_stack() {
  if (!g_scope_stack) g_scope_stack = new std::vector<std::string>();
  return *g_scope_stack;
}

std::vector<TrapRecord>& records() {
  if (!g_records) g_records = new std::vector<TrapRecord>();
  return *g_records;
}
}  // namespace

bool trap_active() { return g_scope_stack && !g_scope_stack->empty(); }

void record_mul() {
  const std::string& scope = scope_stack().back();
  for (auto& r : records())
    if (r.scope == scope) {
      ++r.violations;
      return;
    }
  records().push_back(TrapRecord{scope, 1});
}

TrapScope::TrapScope(std::string name) { scope_stack().push_back(std::move(name)); }

TrapScope::~TrapScope() { scope_stack().pop_back(); }

std::vector<TrapRecord> trap_report() { return records(); }

unsigned long long trap_violations() {
  unsigned long long n = 0;
  for (const auto& r : records()) n += r.violations;
  return n;
}

void reset_traps() { records().clear(); }

}  // namespace prof

}  // namespace burstvit
