#include "oracle/pit-reference.hpp"

#include <algorithm>

namespace psim::oracle {

ReferencePit::ReferencePit(std::size_t capacityBytes, Time lifetime)
  : m_capacity(capacityBytes)
  , m_lifetime(lifetime)
{
}

std::size_t
ReferencePit::sizeOf(const Entry& e) const
{
  return e.name.size() + 16 + 4 * e.faces.size();
}

std::size_t
ReferencePit::used() const
{
  std::size_t total = 0;
  for (const auto& e : m_entries) {
    total += sizeOf(e);
  }
  return total;
}

void
ReferencePit::sweep(Time now)
{
  std::erase_if(m_entries, [now] (const Entry& e) { return e.expiry <= now; });
}

Outcome
ReferencePit::apply(const TraceOp& op)
{
  sweep(op.time);
  const auto& uri = op.name.toUri();
  auto it = std::find_if(m_entries.begin(), m_entries.end(),
                         [&] (const Entry& e) { return e.name == uri; });
  auto face = toUnderlying(op.face);

  switch (op.kind) {
  case OpKind::Expire:
    return Outcome::Swept;
  case OpKind::Content:
    if (it == m_entries.end()) {
      return Outcome::Unsolicited;
    }
    m_entries.erase(it);
    return Outcome::Satisfied;
  case OpKind::Interest:
    break;
  }

  if (it != m_entries.end()) {
    if (std::find(it->faces.begin(), it->faces.end(), face) != it->faces.end()) {
      return Outcome::Duplicate;
    }
    if (used() + 4 > m_capacity) {
      return Outcome::PitFull;
    }
    it->faces.push_back(face);
    return Outcome::Collapsed;
  }
  Entry fresh{uri, {face}, op.time + m_lifetime};
  if (used() + sizeOf(fresh) > m_capacity) {
    return Outcome::PitFull;
  }
  m_entries.push_back(std::move(fresh));
  return Outcome::Forwarded;
}

PitSnapshot
ReferencePit::snapshot(const std::vector<FaceId>& faces) const
{
  PitSnapshot s;
  for (const auto& e : m_entries) {
    s.rows.push_back({e.name, e.faces, sizeOf(e), e.expiry.count()});
  }
  std::sort(s.rows.begin(), s.rows.end(),
            [] (const auto& a, const auto& b) { return a.name < b.name; });
  s.usedBytes = used();
  for (auto f : faces) {
    std::size_t bytes = 0;
    for (const auto& e : m_entries) {
      if (std::find(e.faces.begin(), e.faces.end(), toUnderlying(f)) != e.faces.end()) {
        bytes += sizeOf(e);
      }
    }
    s.faceBytes[toUnderlying(f)] = bytes;
  }
  return s;
}

PitSnapshot
snapshotOf(const fw::Pit& pit, const std::vector<FaceId>& faces)
{
  PitSnapshot s;
  pit.forEach([&] (const fw::PitEntry& e) {
    std::vector<std::uint32_t> fs;
    for (const auto& r : e.inRecords) {
      fs.push_back(toUnderlying(r.face));
    }
    s.rows.push_back({e.name.toUri(), fs, e.sizeBytes, e.expiryTime.count()});
  });
  std::sort(s.rows.begin(), s.rows.end(),
            [] (const auto& a, const auto& b) { return a.name < b.name; });
  s.usedBytes = pit.usedBytes();
  for (auto f : faces) {
    s.faceBytes[toUnderlying(f)] = pit.faceBytes(f);
  }
  return s;
}

Outcome
applyToForwarder(fw::Forwarder& fwd, const TraceOp& op)
{
  switch (op.kind) {
  case OpKind::Expire:
    fwd.expirePit(op.time);
    return Outcome::Swept;
  case OpKind::Content: {
    ndn::ContentObject c{op.name, 100, "P", 0, {}};
    return fwd.onContent(op.face, c, op.time).empty() ? Outcome::Unsolicited : Outcome::Satisfied;
  }
  case OpKind::Interest:
    break;
  }
  auto decision = fwd.onInterest(op.face, ndn::Interest{op.name, 0, op.time}, op.time);
  if (std::holds_alternative<fw::Forward>(decision)) {
    return Outcome::Forwarded;
  }
  if (std::holds_alternative<fw::Collapsed>(decision)) {
    return Outcome::Collapsed;
  }
  if (std::holds_alternative<fw::DroppedDuplicate>(decision)) {
    return Outcome::Duplicate;
  }
  return Outcome::PitFull;
}

std::vector<TraceOp>
randomTrace(std::mt19937_64& rng, const TraceParams& params)
{
  std::vector<ndn::Name> pool;
  auto base = ndn::Name::parse("/t");
  for (std::size_t i = 0; i < params.namePool; ++i) {
    // varying lengths so entry sizes differ
    pool.push_back(base.append(std::string(1 + i % 7, 'a')).append(std::to_string(i)));
  }
  std::uniform_int_distribution<std::size_t> pickName(0, pool.size() - 1);
  std::uniform_int_distribution<std::uint32_t> pickFace(0, params.faces - 1);
  std::uniform_int_distribution<int> pickKind(0, 9);
  std::uniform_int_distribution<std::int64_t> step(0, params.lifetime.count() / 10);

  std::vector<TraceOp> ops;
  Time now{0};
  for (std::size_t i = 0; i < params.events; ++i) {
    now += Time{step(rng)};
    int k = pickKind(rng);
    auto kind = k < 7 ? OpKind::Interest : (k < 9 ? OpKind::Content : OpKind::Expire);
    ops.push_back({kind, now, pool[pickName(rng)], FaceId{pickFace(rng)}});
  }
  return ops;
}

OracleReport
runPitOracle(std::uint64_t seed, std::size_t traces, std::size_t maxEvents)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, maxEvents);
  std::uniform_int_distribution<std::size_t> cap(200, 3000);
  OracleReport report;

  for (std::size_t t = 0; t < traces; ++t) {
    TraceParams params;
    params.events = len(rng);
    params.capacityBytes = cap(rng);
    auto ops = randomTrace(rng, params);

    std::vector<FaceId> faces;
    for (std::uint32_t f = 0; f < params.faces; ++f) {
      faces.push_back(FaceId{f});
    }
    fw::Forwarder fwd({params.capacityBytes, params.lifetime, 0});
    fwd.fib().setDefaultRoute(FaceId{params.faces});
    ReferencePit ref(params.capacityBytes, params.lifetime);

    ++report.traces;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      ++report.events;
      auto got = applyToForwarder(fwd, ops[i]);
      auto want = ref.apply(ops[i]);
      // the real table expires lazily, so sweep both before comparing
      fwd.expirePit(ops[i].time);
      if (got != want || snapshotOf(fwd.pit(), faces) != ref.snapshot(faces)) {
        report.firstMismatch = "trace " + std::to_string(t) + " event " + std::to_string(i) +
                               " (" + ops[i].name.toUri() + ")";
        return report;
      }
    }
  }
  return report;
}

} // namespace psim::oracle
