#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ibetk {

// Operation kinds tracked by the instrumentation ledger. Base-field ops
// (Mul/Sq/Inv/Exp) and extension-field ops (MulK/SqK/InvK/DivK/ExpK) are
// counted at every level they occur: an extension multiply ticks MulK once
// and also ticks the base Mul counter for each coefficient product it
// performs (3 per MulK at k=2 via Karatsuba).
enum class Op : unsigned {
    Mul = 0,
    Sq,
    Inv,
    Exp,
    MulK,
    SqK,
    InvK,
    DivK,
    ExpK,
    EcAdd,
    EcDbl,
    ScalarMul,
    MapToPoint,
    MillerLoop,
    FinalExp,
    Pairing,
    RatioPairing,
    Count_
};

inline constexpr std::size_t kOpCount = static_cast<std::size_t>(Op::Count_);

inline constexpr std::array<std::string_view, kOpCount> kOpNames = {
    "Mul",       "Sq",         "Inv",    "Exp",      "MulK",       "SqK",
    "InvK",      "DivK",       "ExpK",   "EcAdd",    "EcDbl",      "ScalarMul",
    "MapToPoint", "MillerLoop", "FinalExp", "Pairing", "RatioPairing"};

inline std::string_view op_name(Op op) { return kOpNames[static_cast<std::size_t>(op)]; }

// Immutable counter vector: what ledger_snapshot returns and what per-phase
// diffs are expressed in.
struct LedgerSnapshot {
    std::array<std::uint64_t, kOpCount> counters{};
    std::string phase;

    std::uint64_t operator[](Op op) const { return counters[static_cast<std::size_t>(op)]; }

    LedgerSnapshot diff(const LedgerSnapshot& earlier) const {
        LedgerSnapshot d;
        d.phase = phase;
        for (std::size_t i = 0; i < kOpCount; ++i)
            d.counters[i] = counters[i] - earlier.counters[i];
        return d;
    }

    LedgerSnapshot& merge(const LedgerSnapshot& other) {
        for (std::size_t i = 0; i < kOpCount; ++i) counters[i] += other.counters[i];
        return *this;
    }

    bool operator==(const LedgerSnapshot& o) const { return counters == o.counters; }
};

// Per-execution-context accumulator. Counters only grow; sampling helpers
// and other model-exempt work suspend counting through a pause scope.
// Not safe for concurrent mutation: one ledger per thread of execution.
class OpLedger {
  public:
    void tick(Op op, std::uint64_t n = 1) {
        if (paused_ == 0) counters_[static_cast<std::size_t>(op)] += n;
    }

    std::uint64_t count(Op op) const { return counters_[static_cast<std::size_t>(op)]; }

    void set_phase(std::string phase) { phase_ = std::move(phase); }
    const std::string& phase() const { return phase_; }

    LedgerSnapshot snapshot() const {
        LedgerSnapshot s;
        s.counters = counters_;
        s.phase = phase_;
        return s;
    }

    void reset() { counters_.fill(0); }

    bool paused() const { return paused_ > 0; }

  private:
    friend class LedgerPause;
    std::array<std::uint64_t, kOpCount> counters_{};
    std::string phase_;
    int paused_ = 0;
};

// Suspends counting while alive. Used for parameter/point sampling and other
// work the cost model treats as free.
class LedgerPause {
  public:
    explicit LedgerPause(OpLedger& ledger) : ledger_(ledger) { ++ledger_.paused_; }
    ~LedgerPause() { --ledger_.paused_; }
    LedgerPause(const LedgerPause&) = delete;
    LedgerPause& operator=(const LedgerPause&) = delete;

  private:
    OpLedger& ledger_;
};

// Tags the ledger with a scheme phase for the duration of a call.
class PhaseScope {
  public:
    PhaseScope(OpLedger& ledger, std::string phase) : ledger_(ledger), saved_(ledger.phase()) {
        ledger_.set_phase(std::move(phase));
    }
    ~PhaseScope() { ledger_.set_phase(saved_); }
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;

  private:
    OpLedger& ledger_;
    std::string saved_;
};

} // namespace ibetk
