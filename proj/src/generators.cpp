#include "dagelim/generators.hpp"

#include <cmath>
#include <set>
#include <string>

namespace dagelim {

Dag evolution(int p, int q, int steps) {
  if (p < 2 || q < 2 || steps < 1)
    throw InvalidParamsError("evolution requires p,q >= 2 and steps >= 1");
  if (static_cast<long long>(p) * q * (steps + 2) > 20'000'000)
    throw InvalidParamsError("evolution instance too large");
  const int layers = steps + 2;
  const int cells = p * q;
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int layer, int r, int c) { return layer * cells + r * q + c; };
  for (int layer = 0; layer + 1 < layers; ++layer) {
    for (int r = 0; r < p; ++r) {
      for (int c = 0; c < q; ++c) {
        std::set<int> targets{id(layer + 1, r, c),
                              id(layer + 1, (r + 1) % p, c),
                              id(layer + 1, (r + p - 1) % p, c),
                              id(layer + 1, r, (c + 1) % q),
                              id(layer + 1, r, (c + q - 1) % q)};
        for (int t : targets) edges.emplace_back(id(layer, r, c), t);
      }
    }
  }
  return Dag::from_edges(layers * cells, edges);
}

Dag tightness_family(int k, int l) {
  if (k < 2 || l < 1) throw InvalidParamsError("tightness_family requires k >= 2, l >= 1");
  // ids: 0 = source, 1..k = chain, k+1..k+l = sinks
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
  for (int i = 1; i < k; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, k + 1);
  for (int i = 1; i <= l; ++i) edges.emplace_back(k, k + i);
  std::set<std::pair<int, int>> dedup(edges.begin(), edges.end());
  std::vector<std::pair<int, int>> unique_edges(dedup.begin(), dedup.end());
  return Dag::from_edges(1 + k + l, unique_edges);
}

MiddleOutHardInstance middleout_hard(int n) {
  if (n < 2) throw InvalidParamsError("middleout_hard requires n >= 2");
  // ids: sources 0..n-1, a = n, b_i = n+1..2n, u = 2n+1, w_i = 2n+2..3n+1, t = 3n+2
  const int a = n;
  const int u = 2 * n + 1;
  const int t = 3 * n + 2;
  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < n; ++s) edges.emplace_back(s, a);
  for (int i = 0; i < n; ++i) edges.emplace_back(a, n + 1 + i);
  for (int i = 0; i < n; ++i) edges.emplace_back(n + 1 + i, u);
  for (int i = 0; i < n; ++i) edges.emplace_back(u, 2 * n + 2 + i);
  for (int i = 0; i < n; ++i) edges.emplace_back(2 * n + 2 + i, t);
  MiddleOutHardInstance inst{Dag::from_edges(3 * n + 3, edges), {}};
  for (int i = 0; i < n; ++i) inst.separator.push_back(n + 1 + i);
  for (int i = 0; i < n; ++i) inst.separator.push_back(2 * n + 2 + i);
  return inst;
}

Dag gap_instance(GapKind kind, int n) {
  if (kind == GapKind::MecGap) {
    if (n < 4 || n % 4 != 0) throw InvalidParamsError("MecGap requires n divisible by 4");
    const int quarter = n / 4;
    // layers: S, A, B, T, each of size n/4
    auto s = [&](int i) { return i; };
    auto a = [&](int i) { return quarter + i; };
    auto b = [&](int i) { return 2 * quarter + i; };
    auto t = [&](int i) { return 3 * quarter + i; };
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < quarter; ++i) edges.emplace_back(s(i), a(i));
    for (int i = 0; i < quarter; ++i)
      for (int j = 0; j < quarter; ++j) edges.emplace_back(a(i), b(j));
    for (int i = 0; i < quarter; ++i) edges.emplace_back(b(i), t(i));
    return Dag::from_edges(n, edges);
  }

  const int root4 = static_cast<int>(std::llround(std::pow(static_cast<double>(n), 0.25)));
  if (n < 256 || root4 * root4 * root4 * root4 != n)
    throw InvalidParamsError("OveGap requires n to be a fourth power >= 256");
  const int small = root4;          // |S| = |T|
  const int mid = root4 * root4;    // |A| = |B| = |U| = |W|
  const int bulk = n - 2 * small - 4 * mid;
  // consecutive layers fully connected: S, A, B, M, U, W, T
  std::vector<int> layer_sizes{small, mid, mid, bulk, mid, mid, small};
  std::vector<int> offsets(layer_sizes.size() + 1, 0);
  for (size_t i = 0; i < layer_sizes.size(); ++i)
    offsets[i + 1] = offsets[i] + layer_sizes[static_cast<size_t>(i)];
  std::vector<std::pair<int, int>> edges;
  for (size_t layer = 0; layer + 1 < layer_sizes.size(); ++layer)
    for (int i = 0; i < layer_sizes[layer]; ++i)
      for (int j = 0; j < layer_sizes[layer + 1]; ++j)
        edges.emplace_back(offsets[layer] + i, offsets[layer + 1] + j);
  return Dag::from_edges(n, edges);
}

}  // namespace dagelim
