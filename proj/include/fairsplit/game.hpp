#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairsplit/allocation.hpp"
#include "fairsplit/online_balancer.hpp"
#include "fairsplit/online_necklace.hpp"
#include "fairsplit/stream.hpp"
#include "fairsplit/transcript.hpp"

namespace fairsplit {

// Pull-based online protocol: the runner requests the next reveal, hands it
// to the balancer as one gap (or bead) of lookahead, and relays the
// irreversible cut/assign decision back to the adversary.

struct GapReveal {
    Rat length;
    std::vector<Rat> masses;  // per measure
    bool in_prefix = false;   // inside the adversary's feasible prefix
};

class StreamAdversary {
public:
    virtual ~StreamAdversary() = default;
    virtual size_t measures() const = 0;
    virtual Rat epsilon() const = 0;
    virtual std::optional<GapReveal> next_gap() = 0;
    // Decision made at the left end of the gap revealed last.
    virtual void on_decision(bool cut, int assignee) = 0;
};

class NecklaceGameAdversary {
public:
    virtual ~NecklaceGameAdversary() = default;
    virtual size_t colors() const = 0;
    virtual std::vector<long> color_counts() const = 0;
    virtual std::optional<int> next_bead() = 0;
    virtual void on_decision(bool cut, int assignee) = 0;
    // Whether the bead just revealed belongs to the adversary's tracked
    // prefix (the construction block).
    virtual bool in_prefix() const { return false; }
};

class StreamBalancerStrategy {
public:
    virtual ~StreamBalancerStrategy() = default;
    virtual void begin(size_t n, int k, const Rat& epsilon) = 0;
    // Returns the assignee of the interval closed at the current position,
    // or -1 when passing.
    virtual int on_gap(const GapReveal& gap) = 0;
    virtual int finish() = 0;
};

class NecklaceBalancerStrategy {
public:
    virtual ~NecklaceBalancerStrategy() = default;
    virtual void begin(const std::vector<long>& color_counts, int k) = 0;
    virtual NecklaceBalancer::Decision on_bead(int color) = 0;
    virtual int finish() = 0;
};

// Our potential balancers behind the strategy interface.
class PotentialStreamBalancer : public StreamBalancerStrategy {
public:
    void begin(size_t n, int k, const Rat& epsilon) override;
    int on_gap(const GapReveal& gap) override;
    int finish() override;
    const RunStats* stats() const;

private:
    std::unique_ptr<ConsensusBalancer> balancer_;
};

// Test balancer cutting whenever the uncut stretch reaches a fixed length.
class IntervalStreamBalancer : public StreamBalancerStrategy {
public:
    explicit IntervalStreamBalancer(Rat stride) : stride_(std::move(stride)) {}
    void begin(size_t n, int k, const Rat& epsilon) override;
    int on_gap(const GapReveal& gap) override;
    int finish() override { return 0; }

private:
    Rat stride_;
    Rat since_cut_ = Rat(0);
    bool has_pending_ = false;
    int flip_ = 0;
};

// Test balancer that never cuts.
class SilentStreamBalancer : public StreamBalancerStrategy {
public:
    void begin(size_t, int, const Rat&) override {}
    int on_gap(const GapReveal&) override { return -1; }
    int finish() override { return 0; }
};

class PotentialNecklaceBalancer : public NecklaceBalancerStrategy {
public:
    void begin(const std::vector<long>& color_counts, int k) override;
    NecklaceBalancer::Decision on_bead(int color) override;
    int finish() override;
    const NecklaceRunStats* stats() const;

private:
    std::unique_ptr<NecklaceBalancer> balancer_;
};

// Test balancer cutting after every `stride` beads.
class StrideNecklaceBalancer : public NecklaceBalancerStrategy {
public:
    explicit StrideNecklaceBalancer(long stride) : stride_(stride) {}
    void begin(const std::vector<long>& color_counts, int k) override;
    NecklaceBalancer::Decision on_bead(int color) override;
    int finish() override { return 0; }

private:
    long stride_;
    long pending_ = 0;
    bool first_ = true;
    int flip_ = 0;
    int k_ = 2;
};

struct GameOptions {
    // Reconstruct the full explicit stream; adversary games at small epsilon
    // reveal too many gaps of growing precision for this to be the default.
    bool materialize_stream = true;
};

struct ConsensusGameResult {
    GameTranscript transcript;
    std::optional<OnlineStream> stream;  // replayable instance, when materialized
    Allocation allocation;
    DiscrepancyReport discrepancy;
    ValidationReport validation;
};

struct NecklaceGameResult {
    GameTranscript transcript;
    NecklaceInstance necklace;
    Allocation allocation;
    ValidationReport validation;
};

// Runs one consensus game end to end, enforcing the online model: reveals
// respect the per-gap cap, cuts alternate with reveals, assignments are in
// range. A violation aborts the game with a diagnostic event.
ConsensusGameResult run_consensus_game(StreamAdversary& adversary,
                                       StreamBalancerStrategy& balancer, int k = 2,
                                       const GameOptions& options = {});

NecklaceGameResult run_necklace_game(NecklaceGameAdversary& adversary,
                                     NecklaceBalancerStrategy& balancer, int k = 2);

// Replay adversaries presenting a fixed instance.
class ReplayStreamAdversary : public StreamAdversary {
public:
    explicit ReplayStreamAdversary(OnlineStream stream);
    size_t measures() const override { return stream_.n(); }
    Rat epsilon() const override { return stream_.epsilon; }
    std::optional<GapReveal> next_gap() override;
    void on_decision(bool, int) override {}

private:
    OnlineStream stream_;
    size_t next_ = 0;
};

class ReplayNecklaceAdversary : public NecklaceGameAdversary {
public:
    explicit ReplayNecklaceAdversary(NecklaceInstance neck) : neck_(std::move(neck)) {}
    size_t colors() const override { return neck_.n(); }
    std::vector<long> color_counts() const override { return neck_.color_counts; }
    std::optional<int> next_bead() override;
    void on_decision(bool, int) override {}

private:
    NecklaceInstance neck_;
    long next_ = 0;
};

}  // namespace fairsplit
