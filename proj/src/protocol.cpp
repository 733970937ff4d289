// SPDX-License-Identifier: Apache-2.0

#include "bcast/protocol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bcast/bounds.hpp"

namespace bcast {

namespace {

constexpr LayerId kMain = 0;

struct KindName {
  ProtocolKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ProtocolKind::greedy_kn, "greedy-kn"},
    {ProtocolKind::greedy_qd, "greedy-qd"},
    {ProtocolKind::almost_kn, "almost-kn"},
    {ProtocolKind::hypercube, "hypercube"},
    {ProtocolKind::sod_all_but_one, "sod-all-but-one"},
    {ProtocolKind::sod_complete, "sod-complete"},
    {ProtocolKind::nosod_complete, "nosod-complete"},
};

}  // namespace

ProtocolSpec parse_protocol(std::string_view id) {
  for (const auto& kn : kKindNames) {
    if (id == kn.name) return {kn.kind, 0};
  }
  constexpr std::string_view prefix = "simple-rounds(";
  if (id.starts_with(prefix) && id.ends_with(")")) {
    const std::string_view digits = id.substr(prefix.size(), id.size() - prefix.size() - 1);
    std::size_t rounds = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rounds);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
      return {ProtocolKind::simple_rounds, rounds};
    }
  }
  throw Error(ErrorKind::config_error, "unknown protocol '" + std::string(id) + "'");
}

std::string protocol_id(const ProtocolSpec& spec) {
  if (spec.kind == ProtocolKind::simple_rounds) return "simple-rounds(" + std::to_string(spec.rounds) + ")";
  for (const auto& kn : kKindNames) {
    if (kn.kind == spec.kind) return kn.name;
  }
  return "?";
}

std::optional<TopologyKind> required_topology(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::greedy_qd:
    case ProtocolKind::hypercube:
      return TopologyKind::hypercube;
    case ProtocolKind::simple_rounds:
      return std::nullopt;
    default:
      return TopologyKind::complete;
  }
}

bool needs_labels(ProtocolKind kind) {
  return kind == ProtocolKind::sod_all_but_one || kind == ProtocolKind::sod_complete;
}

namespace {

void validate(const ProtocolSpec& spec, const Topology& topo, const ProtocolParams& params) {
  bounds::check_alpha(params.alpha);
  if (const auto need = required_topology(spec.kind); need && *need != topo.kind()) {
    throw Error(ErrorKind::unsupported_topology,
                protocol_id(spec) + " does not run on " + to_string(topo.kind()) + " graphs");
  }
  if (params.initiator >= topo.vertex_count()) {
    throw Error(ErrorKind::invalid_parameter, "initiator out of range");
  }
  switch (spec.kind) {
    case ProtocolKind::almost_kn:
    case ProtocolKind::sod_all_but_one:
    case ProtocolKind::sod_complete:
    case ProtocolKind::nosod_complete:
      if (!(params.eps > 1)) throw Error(ErrorKind::invalid_parameter, "eps must exceed 1 on complete graphs");
      break;
    case ProtocolKind::hypercube:
      if (!(params.eps > 0 && params.eps < 1)) {
        throw Error(ErrorKind::invalid_parameter, "eps must lie in (0, 1) on hypercubes");
      }
      break;
    default:
      break;
  }
}

SchedulePtr seq(std::vector<SchedulePtr> parts) { return std::make_shared<Sequence>(std::move(parts)); }

SchedulePtr greedy(LayerId layer, Seed seed = {}, bool skip_heard = false) {
  return std::make_shared<GreedyInit>(layer, seed, skip_heard);
}

SchedulePtr rounds(LayerId layer, std::size_t count, LeafTag tag) {
  return std::make_shared<SimpleRounds>(layer, count, tag);
}

std::size_t hypercube_rounds(std::size_t d, double alpha, double eps) {
  if (d < 2) return 0;
  const auto r = bounds::rounds_hypercube(d, alpha, eps);
  return r.t1 + r.t2;
}

// All-but-one broadcast of layer `target` with candidate layers c[0], c[1]
// held by origins 0 and 1.
SchedulePtr all_but_one(LayerId target, Seed seed, std::array<LayerId, 2> c, std::size_t r, std::size_t q) {
  auto branch = [&](std::uint32_t origin) {
    const Seed from_inbox{Seed::Kind::intersect_inbox, origin, target};
    return seq({greedy(c[origin], from_inbox), rounds(c[origin], r, LeafTag::layer_rounds),
                std::make_shared<PairSweep>(c[origin], target, q * q)});
  };
  return seq({greedy(target, seed), rounds(target, r, target == kMain ? LeafTag::kn_rounds : LeafTag::layer_rounds),
              std::make_shared<CandidateReport>(target, q), std::make_shared<Interleave>(branch(0), branch(1))});
}

}  // namespace

Plan build_plan(const ProtocolSpec& spec, const Topology& topo, const ProtocolParams& params) {
  validate(spec, topo, params);
  const double alpha = params.alpha;
  const std::size_t n = topo.vertex_count();
  Plan plan;
  plan.parents = {kMain};
  switch (spec.kind) {
    case ProtocolKind::greedy_kn:
      plan.schedule = greedy(kMain);
      break;
    case ProtocolKind::greedy_qd:
      plan.schedule = greedy(kMain, {}, true);
      break;
    case ProtocolKind::almost_kn:
      plan.schedule = seq({greedy(kMain), rounds(kMain, bounds::rounds_kn(n, alpha), LeafTag::kn_rounds)});
      break;
    case ProtocolKind::hypercube:
      plan.schedule = seq({greedy(kMain, {}, true),
                           rounds(kMain, hypercube_rounds(topo.dimension(), alpha, params.eps), LeafTag::qd_rounds)});
      break;
    case ProtocolKind::nosod_complete: {
      const auto l = bounds::l_params(n, alpha, params.eps);
      auto iteration = std::make_shared<HyperactiveSweep>(l.l3);
      auto extended = seq({std::make_shared<Repeat>(iteration, l.l2), rounds(kMain, l.l4, LeafTag::kn_rounds)});
      plan.schedule = seq({greedy(kMain), rounds(kMain, bounds::rounds_kn(n, alpha), LeafTag::kn_rounds),
                           std::make_shared<Repeat>(extended, l.l1)});
      break;
    }
    case ProtocolKind::sod_all_but_one:
    case ProtocolKind::sod_complete: {
      const std::size_t r = bounds::rounds_kn(n, alpha);
      const std::size_t q = bounds::candidate_cap(alpha, params.eps);
      plan.labels = true;
      // main, C0, C1, A0, A1, then the candidate layers of A0 and A1
      plan.parents = {kMain, kMain, kMain, kMain, kMain, 3, 3, 4, 4};
      auto phase1 = all_but_one(kMain, {}, {1, 2}, r, q);
      if (spec.kind == ProtocolKind::sod_all_but_one) {
        plan.parents.resize(3);
        plan.schedule = phase1;
        break;
      }
      auto outer = [&](std::uint32_t origin) {
        const auto a = static_cast<LayerId>(3 + origin);
        const auto c0 = static_cast<LayerId>(5 + 2 * origin);
        const Seed copy{Seed::Kind::copy_layer, origin, static_cast<LayerId>(1 + origin)};
        return seq({all_but_one(a, copy, {c0, static_cast<LayerId>(c0 + 1)}, r, q),
                    std::make_shared<MemberSweep>(a, q)});
      };
      plan.schedule = seq({phase1, std::make_shared<Interleave>(outer(0), outer(1))});
      break;
    }
    case ProtocolKind::simple_rounds:
      plan.schedule = rounds(kMain, spec.rounds, LeafTag::layer_rounds);
      break;
  }
  return plan;
}

std::size_t schedule_budget(const ProtocolSpec& spec, const Topology& topo, const ProtocolParams& params) {
  const std::size_t n = topo.vertex_count();
  switch (spec.kind) {
    case ProtocolKind::greedy_kn:
    case ProtocolKind::greedy_qd:
      return 2;
    case ProtocolKind::almost_kn:
      return 2 + 2 * bounds::rounds_kn(n, params.alpha);
    case ProtocolKind::hypercube:
      return 2 + 2 * hypercube_rounds(topo.dimension(), params.alpha, params.eps);
    case ProtocolKind::nosod_complete: {
      const auto l = bounds::l_params(n, params.alpha, params.eps);
      return 2 + 2 * bounds::rounds_kn(n, params.alpha) + l.l1 * (l.l2 * l.l3 + 2 * l.l4);
    }
    case ProtocolKind::simple_rounds:
      return 2 * spec.rounds;
    default:
      return build_plan(spec, topo, params).schedule->length();
  }
}

}  // namespace bcast

namespace bcast {

namespace {

// a >= b up to rounding in the evaluation of b
bool at_least(double a, double b) { return a >= b - 1e-9 * std::max(1.0, std::abs(b)); }
bool at_most(double a, double b) { return at_least(b, a); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Online invariant checks, driven by the leaf that runs each step.
class Checker {
 public:
  Checker(ProtocolKind kind, const Topology& topo, const ProtocolParams& params, RunSummary& summary)
      : kind_(kind), topo_(topo), params_(params), summary_(summary), k_(bounds::constants(params.alpha)) {
    n_ = topo.vertex_count();
    d_ = topo.dimension();
    switch (kind) {
      case ProtocolKind::almost_kn:
      case ProtocolKind::nosod_complete:
        large_ = n_ >= bounds::n_min(params.alpha, params.eps);
        break;
      case ProtocolKind::sod_all_but_one:
      case ProtocolKind::sod_complete:
        large_ = n_ >= bounds::n_min_sod(params.alpha, params.eps);
        break;
      case ProtocolKind::hypercube:
        large_ = d_ >= bounds::d_min(params.alpha, params.eps);
        break;
      default:
        large_ = false;
        break;
    }
    const bool sized = kind == ProtocolKind::almost_kn || kind == ProtocolKind::nosod_complete ||
                       kind == ProtocolKind::sod_all_but_one || kind == ProtocolKind::sod_complete ||
                       kind == ProtocolKind::hypercube;
    summary_.below_minimum = sized && !large_;
    if (summary_.below_minimum) summary_.notes.push_back("instance below the minimum size; bound checks informational");
    if (topo.kind() == TopologyKind::complete && kind != ProtocolKind::greedy_kn) {
      q_ = bounds::candidate_cap(params.alpha, params.eps);
    }
  }

  void before(const Simulation& sim, const Leaf& leaf, std::size_t local) {
    const NetworkState& s = sim.state();
    switch (leaf.tag()) {
      case LeafTag::kn_rounds:
      case LeafTag::qd_rounds:
      case LeafTag::layer_rounds:
        if (local % 2 == 0) unit_ = snapshot(s);
        break;
      case LeafTag::sweep:
        if (local == 0) sweep_ = snapshot(s);
        break;
      case LeafTag::candidate_report:
        check_reporters(sim, static_cast<const CandidateReport&>(leaf));
        break;
      case LeafTag::greedy: {
        const auto& g = static_cast<const GreedyInit&>(leaf);
        if (local == 0 && g.seed().kind == Seed::Kind::intersect_inbox) {
          unaware_.clear();
          const LayerId t = g.seed().source;
          for (VertexId v = 0; v < n_; ++v) {
            if (!sim.memories()[v].layers[t].aware) unaware_.push_back(sim.chordal_id(v));
          }
        }
        break;
      }
      default:
        break;
    }
  }

  void after(const Simulation& sim, const Leaf& leaf, std::size_t local, const StepRecord& rec) {
    const NetworkState& s = sim.state();
    switch (leaf.tag()) {
      case LeafTag::greedy:
        after_greedy(sim, static_cast<const GreedyInit&>(leaf), local, rec);
        break;
      case LeafTag::kn_rounds:
      case LeafTag::qd_rounds:
      case LeafTag::layer_rounds:
        if (local % 2 == 1 && static_cast<const SimpleRounds&>(leaf).layer() == kMain) {
          after_round(leaf.tag(), snapshot(s), rec);
        }
        break;
      case LeafTag::sweep:
        if (local + 1 == leaf.length()) after_sweep(snapshot(s), rec);
        break;
      default:
        break;
    }
  }

  void finish(const Simulation& sim) {
    const NetworkState& s = sim.state();
    const double k = static_cast<double>(s.uninformed_count());
    const double h = static_cast<double>(s.hyperactive_count());
    switch (kind_) {
      case ProtocolKind::almost_kn:
        if (large_) {
          expect(at_most(k, k_.X * params_.eps), "final k " + fmt(k) + " > " + fmt(k_.X * params_.eps));
          expect(at_most(h, k_.X * (n_ - 2.0)), "final h " + fmt(h) + " > " + fmt(k_.X * (n_ - 2.0)));
        }
        break;
      case ProtocolKind::hypercube:
        if (large_) {
          const double kmax = k_.X / (1 - params_.eps);
          expect(at_most(k, kmax), "final k " + fmt(k) + " > " + fmt(kmax));
          expect(at_most(h, k_.X * (d_ - 1.0)), "final h " + fmt(h) + " > " + fmt(k_.X * (d_ - 1.0)));
        }
        break;
      case ProtocolKind::sod_all_but_one:
        expect(k <= 1, "final k " + fmt(k) + " > 1");
        check_coverage(sim);
        break;
      case ProtocolKind::sod_complete:
      case ProtocolKind::nosod_complete:
        expect(k == 0, "final k " + fmt(k) + " != 0");
        break;
      default:
        break;
    }
  }

 private:
  struct Snapshot {
    double k = 0, h = 0, b = 0, M = 0, cut = 0, informed = 0;
  };

  static Snapshot snapshot(const NetworkState& s) {
    return {static_cast<double>(s.uninformed_count()), static_cast<double>(s.hyperactive_count()),
            static_cast<double>(s.passive_count()),    static_cast<double>(s.measure()),
            static_cast<double>(s.active_count()),     static_cast<double>(s.informed_count())};
  }

  void expect(bool ok, const std::string& what, bool asserted = true) {
    ++summary_.checks;
    if (ok) return;
    (asserted ? summary_.violations : summary_.notes).push_back("step " + std::to_string(step_) + ": " + what);
  }

  void after_greedy(const Simulation& sim, const GreedyInit& g, std::size_t local, const StepRecord& rec) {
    step_ = rec.step;
    if (g.layer() == kMain && local == 1 && rec.step == 2) {
      const double informed = static_cast<double>(sim.state().informed_count());
      const double floor = topo_.kind() == TopologyKind::complete ? bounds::greedy_kn_floor(n_, params_.alpha)
                                                                  : bounds::greedy_qd_floor(d_, params_.alpha);
      expect(at_least(informed, floor), "greedy informed " + fmt(informed) + " < " + fmt(floor));
    }
    if (local == 0 && g.seed().kind == Seed::Kind::intersect_inbox) {
      const VertexId origin = static_cast<VertexId>((g.seed().origin_id + sim.state().initiator()) % n_);
      const LayerMemory& c = sim.memories()[origin].layers[g.layer()];
      if (!c.aware || !c.payload) return;
      const auto& u = *c.payload;
      expect(u.size() <= q_, "candidate set of size " + std::to_string(u.size()) + " exceeds " + std::to_string(q_));
      const bool covers = std::includes(u.begin(), u.end(), unaware_.begin(), unaware_.end());
      expect(covers, "candidate set misses an unaware vertex");
    }
  }

  void after_round(LeafTag tag, const Snapshot& post, const StepRecord& rec) {
    step_ = rec.step;
    const Snapshot& pre = unit_;
    const double acks = static_cast<double>(rec.acks);
    expect(post.M <= pre.M, "measure grew from " + fmt(pre.M) + " to " + fmt(post.M));
    if (tag == LeafTag::kn_rounds) {
      if (!large_ || !(pre.k > k_.X * params_.eps || pre.h > k_.X * (n_ - 2.0))) return;
      const double need = k_.beta * (pre.k * (n_ - pre.k) + pre.h);
      expect(at_least(acks, need), "acks " + fmt(acks) + " < " + fmt(need));
      expect(at_most(post.M, (1 - k_.c) * pre.M), "measure " + fmt(post.M) + " > " + fmt((1 - k_.c) * pre.M));
      return;
    }
    if (tag != LeafTag::qd_rounds || !large_) return;
    if (!(pre.k > k_.X / (1 - params_.eps) || pre.h > k_.X * (d_ - 1.0))) return;
    const double need = k_.beta * (pre.h + pre.cut);
    expect(at_least(acks, need), "acks " + fmt(acks) + " < " + fmt(need));
    const double cube = std::ldexp(1.0, static_cast<int>(d_));
    if (pre.k >= 2 * cube / 3) {
      expect(at_least(post.b, pre.b + k_.beta * pre.cut), "passive " + fmt(post.b) + " < " + fmt(pre.b + k_.beta * pre.cut));
      if (pre.b >= d_ && pre.informed <= cube / 3) {
        const double grown = pre.b * (1 + k_.beta * std::log2(3.0) / d_);
        expect(at_least(post.b, grown), "passive " + fmt(post.b) + " < " + fmt(grown));
      }
    }
    if (pre.k <= 2 * cube / 3) {
      const double rho = 1 + k_.beta * std::log2(2.0 / 3.0) / d_;
      expect(at_most(post.M, rho * pre.M), "measure " + fmt(post.M) + " > " + fmt(rho * pre.M));
    }
  }

  void after_sweep(const Snapshot& post, const StepRecord& rec) {
    step_ = rec.step;
    const Snapshot& pre = sweep_;
    if (pre.k < 1 || pre.h > k_.X * (n_ - 2.0)) return;
    const double target = (1 - k_.Y / 2) * pre.h;
    expect(post.k < pre.k || at_most(post.h, target),
           "sweep left k " + fmt(post.k) + " and h " + fmt(post.h) + " > " + fmt(target));
  }

  void check_reporters(const Simulation& sim, const CandidateReport& leaf) {
    if (leaf.target() != kMain) return;
    const NetworkState& s = sim.state();
    std::size_t qualifying = 0;
    for (VertexId v = 0; v < n_; ++v) {
      if (!s.informed(v)) continue;
      std::size_t live = 0;
      for (PortId p = 0; p < topo_.degree(); ++p) live += s.passive(topo_.arc(v, p)) ? 0 : 1;
      if (live <= leaf.threshold()) ++qualifying;
    }
    step_ = s.step_index();
    expect(3.0 * qualifying >= 2.0 * n_,
           std::to_string(qualifying) + " qualifying reporters < 2n/3", large_);
  }

  void check_coverage(const Simulation& sim) {
    const NetworkState& s = sim.state();
    std::vector<std::uint32_t> missing;
    for (VertexId v = 0; v < n_; ++v) {
      if (!s.informed(v)) missing.push_back(sim.chordal_id(v));
    }
    bool covered = missing.empty();
    for (std::uint32_t origin : {0u, 1u}) {
      const VertexId at = static_cast<VertexId>((origin + s.initiator()) % n_);
      const LayerMemory& c = sim.memories()[at].layers[1 + origin];
      if (c.aware && c.payload && std::includes(c.payload->begin(), c.payload->end(), missing.begin(), missing.end())) {
        covered = true;
      }
    }
    expect(covered, "no origin holds a candidate set covering the uninformed vertices");
  }

  ProtocolKind kind_;
  const Topology& topo_;
  const ProtocolParams& params_;
  RunSummary& summary_;
  bounds::Constants k_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::size_t q_ = 0;
  bool large_ = false;
  std::size_t step_ = 0;
  Snapshot unit_;
  Snapshot sweep_;
  std::vector<std::uint32_t> unaware_;
};

std::string topology_name(const Topology& t) { return to_string(t.kind()); }

}  // namespace

RunResult run_protocol(const ProtocolSpec& spec, std::shared_ptr<const Topology> topology, AdversaryPolicy& adv,
                       const ProtocolParams& params) {
  const Topology& topo = *topology;
  Plan plan = build_plan(spec, topo, params);

  RunResult result;
  result.topology = topology;
  if (plan.labels) result.labels = std::make_shared<const ChordalLabeling>(chordal_labels(topo));
  result.simulation = std::make_shared<Simulation>(plan.schedule, plan.parents, topo, result.labels.get(),
                                                   params.alpha, params.initiator);
  Simulation& sim = *result.simulation;
  if (params.record_history) sim.record_history(true);

  RunSummary& summary = result.trace.summary;
  summary.protocol = protocol_id(spec);
  summary.adversary = adv.id();
  summary.topology = topology_name(topo);
  summary.n = topo.vertex_count();
  summary.d = topo.dimension();
  summary.alpha = params.alpha;
  summary.eps = params.eps;

  Checker checker(spec.kind, topo, params, summary);
  if (params.keep_records) result.trace.rounds.reserve(sim.length());
  while (!sim.finished() && (params.horizon == 0 || sim.now() < params.horizon)) {
    std::size_t local = 0;
    const Leaf& leaf = sim.next_leaf(local);
    checker.before(sim, leaf, local);
    const auto step = sim.step(adv);
    checker.after(sim, leaf, local, step.record);
    if (params.keep_records) result.trace.rounds.push_back(step.record);
  }
  if (!sim.finished()) summary.notes.push_back("stopped at horizon " + std::to_string(params.horizon));
  checker.finish(sim);

  const NetworkState& s = sim.state();
  summary.final_k = s.uninformed_count();
  summary.final_h = s.hyperactive_count();
  summary.steps = sim.now();
  summary.first_complete = sim.first_complete();
  result.completion_step = sim.zero_step();

  if (plan.labels) {
    const std::size_t n = topo.vertex_count();
    for (std::uint32_t origin : {0u, 1u}) {
      const VertexId at = static_cast<VertexId>((origin + params.initiator) % n);
      const LayerMemory& c = sim.memories()[at].layers[1 + origin];
      if (!c.aware || !c.payload) continue;
      CandidateSet set;
      set.origin = origin;
      for (std::uint32_t id : *c.payload) set.members.push_back(static_cast<VertexId>((id + params.initiator) % n));
      result.candidates.push_back(std::move(set));
    }
  }
  return result;
}

namespace {

RunResult run_on(ProtocolKind kind, const Topology& topo, AdversaryPolicy& adv, const ProtocolParams& params) {
  return run_protocol({kind, 0}, std::make_shared<const Topology>(topo), adv, params);
}

RunResult run_sized(ProtocolKind kind, Topology topo, double alpha, double eps, AdversaryPolicy& adv) {
  ProtocolParams params;
  params.alpha = alpha;
  params.eps = eps;
  return run_protocol({kind, 0}, std::make_shared<const Topology>(std::move(topo)), adv, params);
}

}  // namespace

RunResult greedy_init_complete(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::greedy_kn, t, adv, p);
}
RunResult greedy_init_complete(std::size_t n, double alpha, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::greedy_kn, build_complete(n), alpha, 2.0, adv);
}
RunResult greedy_init_hypercube(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::greedy_qd, t, adv, p);
}
RunResult greedy_init_hypercube(std::size_t d, double alpha, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::greedy_qd, build_hypercube(d), alpha, 0.5, adv);
}
RunResult almost_complete_kn(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::almost_kn, t, adv, p);
}
RunResult almost_complete_kn(std::size_t n, double alpha, double eps, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::almost_kn, build_complete(n), alpha, eps, adv);
}
RunResult broadcast_hypercube(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::hypercube, t, adv, p);
}
RunResult broadcast_hypercube(std::size_t d, double alpha, double eps, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::hypercube, build_hypercube(d), alpha, eps, adv);
}
RunResult sod_all_but_one(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::sod_all_but_one, t, adv, p);
}
RunResult sod_all_but_one(std::size_t n, double alpha, double eps, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::sod_all_but_one, build_complete(n), alpha, eps, adv);
}
RunResult sod_complete(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::sod_complete, t, adv, p);
}
RunResult sod_complete(std::size_t n, double alpha, double eps, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::sod_complete, build_complete(n), alpha, eps, adv);
}
RunResult nosod_complete(const Topology& t, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_on(ProtocolKind::nosod_complete, t, adv, p);
}
RunResult nosod_complete(std::size_t n, double alpha, double eps, AdversaryPolicy& adv) {
  return run_sized(ProtocolKind::nosod_complete, build_complete(n), alpha, eps, adv);
}
RunResult simple_rounds(const Topology& t, std::size_t count, AdversaryPolicy& adv, const ProtocolParams& p) {
  return run_protocol({ProtocolKind::simple_rounds, count}, std::make_shared<const Topology>(t), adv, p);
}

}  // namespace bcast
