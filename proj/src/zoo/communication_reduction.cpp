#include "ripsim/zoo/communication_reduction.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"

namespace ripsim::zoo {
namespace {

struct Layout {
  ProtocolShape base;
  std::size_t base_rounds = 0;  // prover rounds of the base
  std::size_t provers = 0;
  std::size_t first_message = 0;  // L1
  std::size_t replay = 0;         // T
  std::size_t j_bits = 0;
  std::size_t i_bits = 0;
  std::size_t k_bits = 0;
  std::size_t length_prefix = 0;
  std::size_t round4_max = 0;

  std::size_t header_bits() const { return j_bits + i_bits + k_bits; }
};

Layout layout_for(const ProtocolSpec& base, const Input& x) {
  Layout l;
  l.base = checked_shape(base, x);
  if (l.base.communication_budget == 0) {
    throw RipError(ErrorKind::kInvalidArgument, "base protocol declares zero communication");
  }
  l.base_rounds = base.prover_round_count();
  l.provers = base.prover_count;
  l.first_message = l.base.message_bits[0][0];
  l.replay = l.base.read_bound;
  std::size_t widest = 0;
  for (const auto& round : l.base.message_bits) {
    for (std::size_t bits : round) widest = std::max(widest, bits);
  }
  l.j_bits = ceil_log2(l.base_rounds);
  l.i_bits = ceil_log2(l.provers);
  l.k_bits = ceil_log2(widest);
  l.length_prefix = ceil_log2(l.base.communication_budget + 1);
  l.round4_max = l.header_bits() + (l.base_rounds - 1) * l.length_prefix +
                 l.base.communication_budget;
  return l;
}

BitString encode_history(const Layout& l, std::size_t j, std::size_t i, std::size_t k,
                         const History& history) {
  BitString out = BitString::from_uint(j, l.j_bits);
  out.append(BitString::from_uint(i, l.i_bits));
  out.append(BitString::from_uint(k, l.k_bits));
  for (const auto& m : history) {
    out.append(BitString::from_uint(m.size(), l.length_prefix));
    out.append(m);
  }
  return out;
}

struct Query {
  std::size_t j = 0;
  std::size_t i = 0;
  std::size_t k = 0;
  History history;
};

Query decode_history(const Layout& l, const BitString& bits) {
  Query q;
  std::size_t at = 0;
  auto take = [&](std::size_t width) {
    if (at + width > bits.size()) {
      throw RipError(ErrorKind::kMalformedStrategy, "truncated query to the second prover");
    }
    std::uint64_t v = bits.to_uint(at, width);
    at += width;
    return static_cast<std::size_t>(v);
  };
  q.j = take(l.j_bits);
  q.i = take(l.i_bits);
  q.k = take(l.k_bits);
  for (std::size_t t = 0; t < q.j; ++t) {
    std::size_t len = take(l.length_prefix);
    if (at + len > bits.size()) {
      throw RipError(ErrorKind::kMalformedStrategy, "truncated history to the second prover");
    }
    q.history.push_back(bits.slice(at, len));
    at += len;
  }
  return q;
}

// Runs the base verifier with every new read served from the replayed bits of
// round 3, in order. Repeated reads are answered from the cache.
class ReplaySession final : public VerifierSession {
 public:
  ReplaySession(VerifierSession& outer, const Layout& layout, const RandomTape& tape)
      : outer_(outer), layout_(layout), tape_(tape) {}

  const Input& input() const override { return outer_.input(); }

  bool coin() override {
    if (pos_ >= tape_.size()) {
      throw RipError(ErrorKind::kBudgetExceeded, "base verifier ran out of random bits");
    }
    return tape_[pos_++];
  }
  std::size_t coins_consumed() const override { return pos_; }

  bool read(const Position& p) override {
    if (p.round == 0 || p.round % 2 == 0 || p.round > rounds_ || p.prover >= layout_.provers ||
        p.bit >= message_length(p.round, p.prover)) {
      throw RipError(ErrorKind::kProtocolViolation, "base verifier read an unavailable bit");
    }
    if (auto it = values_.find(p); it != values_.end()) return it->second;
    if (trace_.size() >= layout_.replay) {
      throw RipError(ErrorKind::kBudgetExceeded, "base verifier exceeded its read bound");
    }
    bool value = outer_.read({3, 0, trace_.size()});
    values_.emplace(p, value);
    trace_.push_back(p);
    return value;
  }

  std::size_t message_length(std::size_t round, std::size_t prover) const override {
    if (round == 0 || round % 2 == 0) return 0;
    std::size_t t = (round - 1) / 2;
    if (t >= layout_.base_rounds || prover >= layout_.provers) return 0;
    return layout_.base.message_bits[t][prover];
  }

  std::size_t current_round() const override { return rounds_; }

  void send(std::vector<Message> messages) override {
    if ((rounds_ + 1) / 2 >= layout_.base_rounds) {
      throw RipError(ErrorKind::kProtocolViolation, "base verifier sent past its last round");
    }
    if (messages.size() != layout_.provers) {
      throw RipError(ErrorKind::kProtocolViolation, "verifier must address every prover");
    }
    sent_.push_back(std::move(messages));
    rounds_ += 2;
  }

  const std::vector<Position>& trace() const { return trace_; }
  const std::map<Position, bool>& values() const { return values_; }
  History history(std::size_t prover, std::size_t prover_round) const {
    History h;
    for (std::size_t t = 0; t < prover_round; ++t) h.push_back(sent_.at(t).at(prover));
    return h;
  }

 private:
  VerifierSession& outer_;
  const Layout& layout_;
  const RandomTape& tape_;
  std::size_t pos_ = 0;
  std::size_t rounds_ = 1;
  std::vector<Position> trace_;
  std::map<Position, bool> values_;
  std::vector<std::vector<Message>> sent_;
};

}  // namespace

ProtocolSpec build_communication_reduction(const ProtocolSpec& base) {
  validate_spec(base);
  if (!base.normalized) {
    throw RipError(ErrorKind::kBaseNotNormalized,
                   "base protocol '" + base.name + "' must pay within [0, 1]");
  }
  ProtocolSpec spec;
  spec.name = "comm-reduction[" + base.name + "]";
  spec.prover_count = 2;
  spec.round_count = 5;
  spec.metadata["base"] = base.name;
  spec.metadata["reduction.scale"] = "R/(2C)";
  spec.metadata["reduction.index_sampling"] =
      "j, i, k read from ceil(log2 range) coins each; out-of-range indices count as unread";
  spec.metadata["reduction.first_message_check"] = "replayed round-1 bits must match m1";

  spec.shape = [base](const Input& x) {
    Layout l = layout_for(base, x);
    ProtocolShape shape;
    shape.message_bits = {{l.first_message, 0}, {l.replay, 0}, {0, 1}};
    shape.randomness_bits = l.base.randomness_bits + l.header_bits();
    shape.communication_budget =
        l.first_message + l.base.randomness_bits + l.replay + l.round4_max + 1;
    shape.message_bound =
        std::max({l.first_message, l.base.randomness_bits, l.replay, l.round4_max, std::size_t{1}});
    shape.read_bound = l.first_message + l.replay + 1;
    return shape;
  };

  spec.verifier = [base](VerifierSession& session) {
    const Layout l = layout_for(base, session.input());
    RandomTape r;
    for (std::size_t b = 0; b < l.base.randomness_bits; ++b) r.push_back(session.coin());
    session.send({r, Message{}});

    ReplaySession replay(session, l, r);
    Rational base_payment = base.verifier(replay);
    if (base_payment < 0 || base_payment > 1) {
      throw RipError(ErrorKind::kBaseNotNormalized,
                     "base paid " + to_fraction_string(base_payment) + " outside [0, 1]");
    }
    for (const auto& [p, value] : replay.values()) {
      if (p.round == 1 && p.prover == 0 && session.read({1, 0, p.bit}) != value) {
        return Rational(-1);
      }
    }

    std::size_t j = session.coins(l.j_bits);
    std::size_t i = session.coins(l.i_bits);
    std::size_t k = session.coins(l.k_bits);
    if (j >= l.base_rounds || i >= l.provers || k >= l.base.message_bits[j][i]) return Rational(0);
    auto recorded = replay.values().find(Position{2 * j + 1, i, k});
    if (recorded == replay.values().end()) return Rational(0);

    session.send({Message{}, encode_history(l, j, i, k, replay.history(i, j))});
    bool b = session.read({5, 1, 0});
    if (b != recorded->second) return Rational(-1);
    Rational payment = base_payment / Rational(2 * l.base.communication_budget);
    payment.canonicalize();
    return payment;
  };
  return spec;
}

StrategyProfile honest_reduction_profile(const ProtocolSpec& base, const Input& x,
                                         const StrategyProfile& base_profile) {
  const Layout l = layout_for(base, x);
  StrategyProfile s(2, 3);
  s.set(0, 0, {}, base_profile.message(0, 0, {}));
  s.set_rule(0, 1, [base, x, base_profile, l](const History& h) {
    Execution run = execute(base, x, h.at(0), base_profile);
    Message replayed;
    for (const auto& p : run.transcript.access_trace) replayed.push_back(run.transcript.bit(p));
    while (replayed.size() < l.replay) replayed.push_back(false);
    return replayed;
  });
  s.set_rule(1, 2, [base_profile, l](const History& h) {
    Query q = decode_history(l, h.at(1));
    Message m = base_profile.message(q.i, q.j, q.history);
    Message out;
    out.push_back(q.k < m.size() && m[q.k]);
    return out;
  });
  return s;
}

}  // namespace ripsim::zoo
