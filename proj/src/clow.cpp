#include "charpoly/clow.hpp"

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <unordered_set>

namespace charpoly {

bool is_simple_cycle(const Clow& c) {
  std::unordered_set<int> seen;
  for (int v : c.vertices)
    if (!seen.insert(v).second) return false;
  return true;
}

bool is_cycle_cover(const ClowSequence& cs) {
  std::unordered_set<int> seen;
  for (const Clow& c : cs.clows) {
    for (int v : c.vertices)
      if (!seen.insert(v).second) return false;
  }
  return true;
}

bool is_valid_clow_sequence(const ClowSequence& cs) {
  int last_head = 0;
  for (const Clow& c : cs.clows) {
    if (c.vertices.empty()) return false;
    int head = c.vertices.front();
    if (head <= last_head) return false;
    last_head = head;
    for (std::size_t i = 1; i < c.vertices.size(); ++i)
      if (c.vertices[i] <= head) return false;  // head is strict min, occurs once
  }
  return true;
}

int sign(const ClowSequence& cs) { return cs.clows.size() % 2 == 0 ? 1 : -1; }

std::string to_string(const ClowSequence& cs) {
  if (cs.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < cs.clows.size(); ++i) {
    if (i > 0) out += ',';
    out += '(';
    for (std::size_t t = 0; t < cs.clows[i].vertices.size(); ++t) {
      if (t > 0) out += ',';
      out += std::to_string(cs.clows[i].vertices[t]);
    }
    out += ')';
  }
  return out;
}

mpz_class count_clow_sequences(int n, int k) {
  if (n < 1) throw IndexError("vertex count must be >= 1");
  if (k < 0) throw IndexError("negative sequence length");
  // seqs[h][r]: sequences of total length r whose heads are all >= h.
  // A clow with head h and length l has (n-h)^(l-1) walks.
  std::vector<std::vector<mpz_class>> seqs(static_cast<std::size_t>(n) + 2,
                                           std::vector<mpz_class>(static_cast<std::size_t>(k) + 1, 0));
  for (int r = 0; r <= k; ++r) seqs[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(r)] = (r == 0) ? 1 : 0;
  for (int h = n; h >= 1; --h) {
    for (int r = 0; r <= k; ++r) {
      mpz_class total = seqs[static_cast<std::size_t>(h) + 1][static_cast<std::size_t>(r)];
      mpz_class walks = 1;  // (n-h)^(l-1), starting at l = 1
      for (int l = 1; l <= r; ++l) {
        if (l > 1) walks *= (n - h);
        total += walks * seqs[static_cast<std::size_t>(h) + 1][static_cast<std::size_t>(r - l)];
      }
      seqs[static_cast<std::size_t>(h)][static_cast<std::size_t>(r)] = total;
    }
  }
  return seqs[1][static_cast<std::size_t>(k)];
}

namespace {

struct ClowSequenceEnumerator {
  int n;
  int k;
  std::vector<ClowSequence>& out;
  ClowSequence current;
  std::vector<int> walk;  // open clow, empty when none
  int used = 0;

  // Emits in canonical order because closing the open clow is explored
  // before every extension, and vertices ascend.
  void run() {
    if (k == 0) {
      out.push_back(ClowSequence{});
      return;
    }
    descend_new_heads(1);
  }

  void descend_new_heads(int min_head) {
    if (used == k) {
      out.push_back(current);
      return;
    }
    for (int h = min_head; h <= n; ++h) {
      walk.assign(1, h);
      ++used;
      extend_or_close();
      --used;
      walk.clear();
    }
  }

  void extend_or_close() {
    const int head = walk.front();
    current.clows.push_back(Clow{walk});
    std::vector<int> open = std::move(walk);
    walk.clear();
    descend_new_heads(head + 1);
    walk = std::move(open);
    current.clows.pop_back();
    if (used < k) {
      for (int v = head + 1; v <= n; ++v) {
        walk.push_back(v);
        ++used;
        extend_or_close();
        --used;
        walk.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<ClowSequence> enumerate_clow_sequences(int n, int k, std::size_t cap) {
  mpz_class total = count_clow_sequences(n, k);
  if (cmp(total, static_cast<unsigned long>(cap)) > 0)
    throw CapExceededError("enumeration of " + total.get_str() + " clow sequences exceeds cap " +
                           std::to_string(cap));
  std::vector<ClowSequence> out;
  out.reserve(total.get_ui());
  ClowSequenceEnumerator e{n, k, out, {}, {}, 0};
  e.run();
  if (out.size() != total.get_ui())
    throw Error("clow enumeration produced " + std::to_string(out.size()) + " sequences, counted " +
                total.get_str());
  return out;
}

mpz_class count_cycle_covers(int n, int k) {
  if (n < 1) throw IndexError("vertex count must be >= 1");
  if (k < 0) throw IndexError("negative cover size");
  if (k > n) return 0;
  mpz_class covers;
  mpz_bin_uiui(covers.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
  return covers * fact;
}

std::vector<CycleCover> enumerate_cycle_covers(int n, int k, std::size_t cap) {
  mpz_class total = count_cycle_covers(n, k);
  if (cmp(total, static_cast<unsigned long>(cap)) > 0)
    throw CapExceededError("enumeration of " + total.get_str() + " cycle covers exceeds cap " +
                           std::to_string(cap));
  std::vector<CycleCover> out;
  out.reserve(total.get_ui());
  if (k == 0) {
    out.push_back(CycleCover{});
    return out;
  }
  if (k > n) return out;

  std::vector<int> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 1);
  while (true) {
    // every permutation of the subset, read off as disjoint cycles
    std::vector<int> perm(subset);
    do {
      std::unordered_map<int, int> sigma;
      for (int i = 0; i < k; ++i) sigma[subset[static_cast<std::size_t>(i)]] = perm[static_cast<std::size_t>(i)];
      CycleCover cover;
      std::unordered_set<int> visited;
      for (int start : subset) {
        if (visited.count(start)) continue;
        Clow cycle;
        int v = start;
        do {
          cycle.vertices.push_back(v);
          visited.insert(v);
          v = sigma[v];
        } while (v != start);
        cover.clows.push_back(std::move(cycle));
      }
      out.push_back(std::move(cover));
    } while (std::next_permutation(perm.begin(), perm.end()));

    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Rotates a simple cycle so that its minimal vertex leads.
Clow canonical_rotation(std::vector<int> cycle) {
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  return Clow{std::move(cycle)};
}

}  // namespace

ClowSequence involution(const ClowSequence& cs) {
  if (cs.empty() || is_cycle_cover(cs)) return cs;

  // Longest trailing run of pairwise-disjoint simple cycles; the clow just
  // before it is the one the proof operates on.
  const std::size_t total = cs.clows.size();
  std::unordered_set<int> suffix_vertices;
  std::size_t suffix_start = total;
  while (suffix_start > 0) {
    const Clow& c = cs.clows[suffix_start - 1];
    if (!is_simple_cycle(c)) break;
    bool disjoint = true;
    for (int v : c.vertices)
      if (suffix_vertices.count(v)) {
        disjoint = false;
        break;
      }
    if (!disjoint) break;
    for (int v : c.vertices) suffix_vertices.insert(v);
    --suffix_start;
  }
  // cs is not a cover, so some clow precedes the suffix.
  const std::size_t active = suffix_start - 1;
  const std::vector<int>& walk = cs.clows[active].vertices;

  std::unordered_map<int, std::size_t> first_pos;
  first_pos[walk[0]] = 0;
  for (std::size_t t = 1; t < walk.size(); ++t) {
    const int v = walk[t];
    if (suffix_vertices.count(v)) {
      // (i) walked into a suffix cycle: splice that cycle's loop in at v.
      std::size_t hit = suffix_start;
      while (std::find(cs.clows[hit].vertices.begin(), cs.clows[hit].vertices.end(), v) ==
             cs.clows[hit].vertices.end())
        ++hit;
      std::vector<int> loop = cs.clows[hit].vertices;
      std::rotate(loop.begin(), std::find(loop.begin(), loop.end(), v), loop.end());
      std::vector<int> merged(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(t) + 1);
      merged.insert(merged.end(), loop.begin() + 1, loop.end());
      merged.push_back(v);
      merged.insert(merged.end(), walk.begin() + static_cast<std::ptrdiff_t>(t) + 1, walk.end());

      ClowSequence result;
      for (std::size_t i = 0; i < total; ++i) {
        if (i == hit) continue;
        if (i == active)
          result.clows.push_back(Clow{merged});
        else
          result.clows.push_back(cs.clows[i]);
      }
      return result;
    }
    if (auto it = first_pos.find(v); it != first_pos.end()) {
      // (ii) v completes a simple cycle inside the walk: detach it.
      const std::size_t s = it->second;
      Clow cycle = canonical_rotation(
          std::vector<int>(walk.begin() + static_cast<std::ptrdiff_t>(s),
                           walk.begin() + static_cast<std::ptrdiff_t>(t)));
      std::vector<int> remaining(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(s) + 1);
      remaining.insert(remaining.end(), walk.begin() + static_cast<std::ptrdiff_t>(t) + 1, walk.end());

      ClowSequence result;
      for (std::size_t i = 0; i < active; ++i) result.clows.push_back(cs.clows[i]);
      result.clows.push_back(Clow{std::move(remaining)});
      bool inserted = false;
      for (std::size_t i = suffix_start; i < total; ++i) {
        if (!inserted && cycle.head() < cs.clows[i].head()) {
          result.clows.push_back(cycle);
          inserted = true;
        }
        result.clows.push_back(cs.clows[i]);
      }
      if (!inserted) result.clows.push_back(cycle);
      return result;
    }
    first_pos.emplace(v, t);
  }
  throw Error("involution invariant violated: no merge or detach point in " + to_string(cs));
}

}  // namespace charpoly
