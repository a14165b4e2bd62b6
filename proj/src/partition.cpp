#include "uniclone/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace uniclone {

namespace {

// Renumber arbitrary labels so block ids appear in order of first occurrence
// (equivalently: in order of each block's minimum element).
std::pair<std::vector<int>, int> canonicalize(std::span<const int> labels) {
  std::vector<int> out(labels.size(), -1);
  std::map<int, int> rename;
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = rename.try_emplace(labels[i], next);
    if (fresh) ++next;
    out[i] = it->second;
  }
  return {std::move(out), next};
}

} // namespace

SetPartition SetPartition::discrete(int ground) {
  if (ground <= 0) fail(ErrorCode::bad_argument, "partition: ground set must be nonempty");
  std::vector<int> ids(ground);
  std::iota(ids.begin(), ids.end(), 0);
  return SetPartition(std::move(ids), ground);
}

SetPartition SetPartition::single(int ground) {
  if (ground <= 0) fail(ErrorCode::bad_argument, "partition: ground set must be nonempty");
  return SetPartition(std::vector<int>(ground, 0), 1);
}

SetPartition SetPartition::fromBlockIds(std::span<const int> ids) {
  if (ids.empty()) fail(ErrorCode::bad_argument, "partition: ground set must be nonempty");
  auto [canon, count] = canonicalize(ids);
  return SetPartition(std::move(canon), count);
}

SetPartition SetPartition::fromBlocks(int ground, const std::vector<std::vector<int>>& blocks) {
  if (ground <= 0) fail(ErrorCode::bad_argument, "partition: ground set must be nonempty");
  std::vector<int> ids(ground, -1);
  int label = 0;
  for (const auto& block : blocks) {
    if (block.empty()) fail(ErrorCode::bad_argument, "partition: empty block");
    for (int x : block) {
      if (x < 0 || x >= ground) fail(ErrorCode::bad_argument, "partition: element out of range");
      if (ids[x] != -1) fail(ErrorCode::bad_argument, "partition: blocks are not disjoint");
      ids[x] = label;
    }
    ++label;
  }
  for (int x = 0; x < ground; ++x)
    if (ids[x] == -1) fail(ErrorCode::bad_argument, "partition: blocks do not cover the ground set");
  auto [canon, count] = canonicalize(ids);
  return SetPartition(std::move(canon), count);
}

SetPartition SetPartition::kernel(std::span<const int> values) {
  if (values.empty()) fail(ErrorCode::bad_argument, "kernel: empty ground set");
  auto [canon, count] = canonicalize(values);
  return SetPartition(std::move(canon), count);
}

SetPartition SetPartition::kernel(std::span<const std::uint8_t> values) {
  std::vector<int> v(values.begin(), values.end());
  return kernel(std::span<const int>(v));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(block_count_);
  for (int x = 0; x < ground(); ++x) out[block_of_[x]].push_back(x);
  return out;
}

bool SetPartition::refines(const SetPartition& q) const {
  requireSameGround(*this, q, "refines");
  // block of *this splits across q-blocks iff two of its members land apart
  std::vector<int> q_block_seen(block_count_, -1);
  for (int x = 0; x < ground(); ++x) {
    int b = block_of_[x];
    if (q_block_seen[b] == -1)
      q_block_seen[b] = q.block_of_[x];
    else if (q_block_seen[b] != q.block_of_[x])
      return false;
  }
  return true;
}

SetPartition SetPartition::meetWith(const SetPartition& q) const {
  requireSameGround(*this, q, "meet");
  std::vector<int> ids(ground());
  for (int x = 0; x < ground(); ++x)
    ids[x] = block_of_[x] * q.block_count_ + q.block_of_[x];
  return fromBlockIds(ids);
}

SetPartition SetPartition::joinWith(const SetPartition& q) const {
  requireSameGround(*this, q, "join");
  const int n = ground();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  // first element of each block is its anchor
  std::vector<int> anchor_p(block_count_, -1), anchor_q(q.block_count_, -1);
  for (int x = 0; x < n; ++x) {
    int bp = block_of_[x];
    if (anchor_p[bp] == -1) anchor_p[bp] = x; else unite(anchor_p[bp], x);
    int bq = q.block_of_[x];
    if (anchor_q[bq] == -1) anchor_q[bq] = x; else unite(anchor_q[bq], x);
  }
  std::vector<int> ids(n);
  for (int x = 0; x < n; ++x) ids[x] = find(x);
  return fromBlockIds(ids);
}

bool SetPartition::operator<(const SetPartition& o) const {
  if (ground() != o.ground()) return ground() < o.ground();
  return block_of_ < o.block_of_;
}

std::string SetPartition::toString() const {
  std::ostringstream os;
  os << '{';
  auto bs = blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b) os << ',';
    os << '{';
    for (std::size_t k = 0; k < bs[b].size(); ++k) {
      if (k) os << ',';
      os << bs[b][k];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

SetPartition preimagePartition(std::span<const int> f, const SetPartition& p) {
  if (f.empty()) fail(ErrorCode::bad_argument, "preimage: empty domain");
  std::vector<int> ids(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] < 0 || f[x] >= p.ground())
      fail(ErrorCode::bad_argument, "preimage: map value outside partition ground");
    ids[x] = p.blockOf(f[x]);
  }
  return SetPartition::fromBlockIds(ids);
}

std::vector<SetPartition> allPartitions(int n) {
  if (n <= 0) fail(ErrorCode::bad_argument, "allPartitions: ground set must be nonempty");
  std::vector<SetPartition> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    out.push_back(SetPartition::fromBlockIds(rgs));
    // next restricted growth string: rgs[i] <= 1 + max(rgs[0..i-1])
    int i = n - 1;
    for (; i > 0; --i) {
      int maxPrefix = 0;
      for (int j = 0; j < i; ++j) maxPrefix = std::max(maxPrefix, rgs[j]);
      if (rgs[i] <= maxPrefix) break;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < n; ++j) rgs[j] = 0;
  }
  return out;
}

SetPartition meetAll(int ground, std::span<const SetPartition> ps) {
  SetPartition acc = SetPartition::single(ground);
  for (const auto& p : ps) acc = acc.meetWith(p);
  return acc;
}

void requireSameGround(const SetPartition& p, const SetPartition& q, const char* op) {
  if (p.ground() != q.ground())
    fail(ErrorCode::ground_mismatch, std::string(op) + ": partitions on different ground sets");
}

} // namespace uniclone
