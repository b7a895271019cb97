#include "cpnasp/asp.hpp"
#include "cpnasp/enumerator.hpp"

#include <sstream>

namespace cpn {

namespace {

const char *kNotEnabledInput =
    "notenabled(T,TS) :- ptarc(P,T,N,C,TS), holds(P,Q,C,TS), place(P), trans(T), time(TS), "
    "num(N), num(Q), col(C), Q<N.";
const char *kNotEnabledInhibit =
    "notenabled(T,TS) :- iptarc(P,T,N,C,TS), holds(P,Q,C,TS), place(P), trans(T), time(TS), "
    "num(N), num(Q), col(C), Q>=N.";
const char *kNotEnabledRead =
    "notenabled(T,TS) :- tptarc(P,T,N,C,TS), holds(P,Q,C,TS), place(P), trans(T), time(TS), "
    "num(N), num(Q), col(C), Q<N.";
const char *kNotEnabledInProgress =
    "notenabled(T,TS1) :- fires(T,TS0), num(N), TS1>TS0, tparc(T,P,N,C,TS0,D), col(C), "
    "time(TS0), time(TS1), TS1<(TS0+D).";
const char *kEnabled = "enabled(T,TS) :- trans(T), time(TS), not notenabled(T,TS).";

const char *kNotPrEnabled =
    "notprenabled(T,TS) :- enabled(T,TS), transpr(T,P), enabled(TT,TS), transpr(TT,PP), PP < P.";
const char *kPrEnabled = "prenabled(T,TS) :- enabled(T,TS), not notprenabled(T,TS).";

const char *kChoice = "{fires(T,TS)} :- enabled(T,TS), trans(T), time(TS).";
const char *kPrChoice = "{fires(T,TS)} :- prenabled(T,TS), trans(T), time(TS).";

const char *kAdd = "add(P,Q,T,C,TS) :- fires(T,TS), tparc(T,P,Q,C,TS), time(TS).";
const char *kAddTimedLegacy =
    "add(P,Q,T,C,TSS) :- fires(T,TS), time(TS;TSS), tparc(T,P,Q,C,TS,D), TSS=TS+D-1.";
const char *kAddTimedClingo =
    "add(P,Q,T,C,TSS) :- fires(T,TS), time(TS), time(TSS), tparc(T,P,Q,C,TS,D), TSS=TS+D-1.";
const char *kDel = "del(P,Q,T,C,TS) :- fires(T,TS), ptarc(P,T,Q,C,TS), time(TS).";

const char *kTotIncrLegacy =
    "tot_incr(P,QQ,C,TS) :- col(C), QQ = #sum[add(P,Q,T,C,TS) = Q : num(Q) : trans(T)], "
    "time(TS), num(QQ), place(P).";
const char *kTotDecrLegacy =
    "tot_decr(P,QQ,C,TS) :- col(C), QQ = #sum[del(P,Q,T,C,TS) = Q : num(Q) : trans(T)], "
    "time(TS), num(QQ), place(P).";
const char *kTotIncrClingo =
    "tot_incr(P,QQ,C,TS) :- col(C), QQ = #sum{Q,T : add(P,Q,T,C,TS), num(Q), trans(T)}, "
    "time(TS), num(QQ), place(P).";
const char *kTotDecrClingo =
    "tot_decr(P,QQ,C,TS) :- col(C), QQ = #sum{Q,T : del(P,Q,T,C,TS), num(Q), trans(T)}, "
    "time(TS), num(QQ), place(P).";

const char *kNextLegacy =
    "holds(P,Q,C,TS+1) :- place(P), num(Q;Q1;Q2;Q3), time(TS), time(TS+1), col(C), "
    "holds(P,Q1,C,TS), tot_incr(P,Q2,C,TS), tot_decr(P,Q3,C,TS), Q=Q1+Q2-Q3.";
const char *kNextClingo =
    "holds(P,Q,C,TS+1) :- place(P), num(Q), num(Q1), num(Q2), num(Q3), time(TS), time(TS+1), "
    "col(C), holds(P,Q1,C,TS), tot_incr(P,Q2,C,TS), tot_decr(P,Q3,C,TS), Q=Q1+Q2-Q3.";

const char *kConsumesMorePlace =
    "consumesmore(P,TS) :- holds(P,Q,C,TS), tot_decr(P,Q1,C,TS), Q1 > Q.";
const char *kConsumesMore = "consumesmore :- consumesmore(P,TS).";
const char *kNoOverconsumption = ":- consumesmore.";

const char *kCouldNotHave =
    "could_not_have(T,TS) :- enabled(T,TS), not fires(T,TS), ptarc(S,T,Q,C,TS), "
    "holds(S,QQ,C,TS), tot_decr(S,QQQ,C,TS), Q > QQ - QQQ.";
const char *kMaximal =
    ":- not could_not_have(T,TS), time(TS), enabled(T,TS), not fires(T,TS), trans(T).";
const char *kPrCouldNotHave =
    "could_not_have(T,TS) :- prenabled(T,TS), not fires(T,TS), ptarc(S,T,Q,C,TS), "
    "holds(S,QQ,C,TS), tot_decr(S,QQQ,C,TS), Q > QQ - QQQ.";
const char *kPrMaximal =
    ":- not could_not_have(T,TS), time(TS), prenabled(T,TS), not fires(T,TS), trans(T).";

const char *kMoreThanOne = "more_than_one_fires :- fires(T1,TS), fires(T2,TS), T1!=T2, time(TS).";
const char *kInterleaved = ":- more_than_one_fires.";

std::string pool(const std::vector<std::string> &ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i)
    s += (i ? ";" : "") + ids[i];
  return s;
}

} // namespace

bool emits_timed(const NetDef &net, const SemanticsMode &mode) {
  return net.any_timed() || !mode.reentrant;
}

std::string emit_rules(const NetDef &net, const EmitterConfig &cfg) {
  const bool legacy = cfg.dialect == AspDialect::Legacy;
  const bool timed = emits_timed(net, cfg.mode);
  const bool pri = cfg.mode.priorities_active;
  std::ostringstream os;
  auto line = [&](const char *rule) { os << rule << '\n'; };

  line(kNotEnabledInput);
  line(kNotEnabledInhibit);
  line(kNotEnabledRead);
  if (timed && !cfg.mode.reentrant)
    line(kNotEnabledInProgress);
  line(kEnabled);
  if (pri) {
    line(kNotPrEnabled);
    line(kPrEnabled);
    line(kPrChoice);
  } else {
    line(kChoice);
  }
  line(timed ? (legacy ? kAddTimedLegacy : kAddTimedClingo) : kAdd);
  line(kDel);
  line(legacy ? kTotIncrLegacy : kTotIncrClingo);
  line(legacy ? kTotDecrLegacy : kTotDecrClingo);
  line(legacy ? kNextLegacy : kNextClingo);
  line(kConsumesMorePlace);
  line(kConsumesMore);
  line(kNoOverconsumption);
  switch (cfg.mode.firing) {
  case FiringMode::Set:
    break;
  case FiringMode::Maximal:
    line(pri ? kPrCouldNotHave : kCouldNotHave);
    line(pri ? kPrMaximal : kMaximal);
    break;
  case FiringMode::Interleaved:
    line(kMoreThanOne);
    line(kInterleaved);
    break;
  }
  if (!legacy) {
    line("#show fires/2.");
    line("#show holds/4.");
  }
  return os.str();
}

std::string emit(const NetDef &net, const Marking &m0, const EmitterConfig &cfg) {
  const bool timed = emits_timed(net, cfg.mode);
  std::ostringstream os;
  os << "% net " << net.name << ", horizon " << cfg.horizon << ", semantics "
     << to_string(cfg.mode.firing) << (cfg.mode.reentrant ? "" : ", non-reentrant")
     << (cfg.mode.priorities_active ? ", priorities" : "") << '\n';

  std::vector<std::string> tids;
  for (const auto &t : net.transitions)
    tids.push_back(t.id);
  os << "time(0.." << cfg.horizon << "). num(0.." << cfg.ntok << ").";
  if (!net.places.empty())
    os << " place(" << pool(net.places) << ").";
  if (!tids.empty())
    os << " trans(" << pool(tids) << ").";
  os << '\n';
  if (!net.colors.empty())
    os << "col(" << pool(net.colors) << ").\n";
  if (cfg.mode.priorities_active)
    for (const auto &t : net.transitions)
      os << "transpr(" << t.id << ',' << t.priority << ").\n";

  for (const auto &t : net.transitions) {
    for (const auto &p : net.places)
      if (auto it = net.input_arcs.find({p, t.id}); it != net.input_arcs.end())
        for (const auto &c : net.colors)
          if (Count n = it->second.count(c))
            os << "ptarc(" << p << ',' << t.id << ',' << n << ',' << c << ",TS):-time(TS).\n";
    for (const auto &p : net.places)
      if (auto it = net.output_arcs.find({t.id, p}); it != net.output_arcs.end())
        for (const auto &c : net.colors)
          if (Count n = it->second.count(c)) {
            os << "tparc(" << t.id << ',' << p << ',' << n << ',' << c << ",TS";
            if (timed)
              os << ',' << t.duration;
            os << "):-time(TS).\n";
          }
    for (const auto &p : net.places)
      if (net.resets_of(t.id).count(p))
        for (const auto &c : net.colors)
          os << "ptarc(" << p << ',' << t.id << ",N," << c << ",TS):-holds(" << p << ",N," << c
             << ",TS),num(N),N>0,time(TS).\n";
    for (const auto &p : net.places)
      if (net.inhibitors_of(t.id).count(p))
        for (const auto &c : net.colors)
          os << "iptarc(" << p << ',' << t.id << ",1," << c << ",TS):-time(TS).\n";
    for (const auto &p : net.places)
      if (auto it = net.read_arcs.find({p, t.id}); it != net.read_arcs.end())
        for (const auto &c : net.colors)
          if (Count n = it->second.count(c))
            os << "tptarc(" << p << ',' << t.id << ',' << n << ',' << c << ",TS):-time(TS).\n";
  }

  os << "% initial marking\n";
  for (const auto &p : net.places)
    for (const auto &c : net.colors)
      os << "holds(" << p << ',' << m0.count(p, c) << ',' << c << ",0).\n";

  os << "% rules\n" << emit_rules(net, cfg);
  return os.str();
}

Count max_reachable_count(const NetDef &net, const Marking &m0, std::size_t horizon,
                          const SemanticsMode &mode) {
  EnumerateOptions opts;
  opts.horizon = horizon;
  opts.mode = mode;
  Count best = 0;
  for (const auto &layer : reachable_states(net, m0, opts))
    for (const auto &s : layer)
      for (const auto &[p, ms] : s.marking)
        for (const auto &[c, n] : ms)
          best = std::max(best, n);
  return best;
}

} // namespace cpn
