#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "dagelim/dag.hpp"

namespace dagelim {

// Adjacency stored as bit rows. This is the workhorse representation for
// the exact solvers and the stochastic searches, where elimination runs
// millions of times on graphs of a few dozen vertices.
struct BitGraph {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> outw, inw;  // n rows of `words` words each
  std::vector<char> present;
  long long m = 0;

  static BitGraph from(const Dag& d) {
    BitGraph g;
    g.n = d.order();
    g.words = (g.n + 63) / 64;
    g.outw.assign(static_cast<size_t>(g.n) * g.words, 0);
    g.inw.assign(static_cast<size_t>(g.n) * g.words, 0);
    g.present.assign(static_cast<size_t>(g.n), 0);
    for (int v : d.vertices()) g.present[static_cast<size_t>(v)] = 1;
    for (auto [u, w] : d.edges()) {
      g.out_row(u)[w >> 6] |= 1ull << (w & 63);
      g.in_row(w)[u >> 6] |= 1ull << (u & 63);
    }
    g.m = d.edge_count();
    return g;
  }

  std::uint64_t* out_row(int v) { return outw.data() + static_cast<size_t>(v) * words; }
  std::uint64_t* in_row(int v) { return inw.data() + static_cast<size_t>(v) * words; }
  const std::uint64_t* out_row(int v) const { return outw.data() + static_cast<size_t>(v) * words; }
  const std::uint64_t* in_row(int v) const { return inw.data() + static_cast<size_t>(v) * words; }

  static int popcount_row(const std::uint64_t* row, int words) {
    int c = 0;
    for (int i = 0; i < words; ++i) c += std::popcount(row[i]);
    return c;
  }

  int out_degree(int v) const { return popcount_row(out_row(v), words); }
  int in_degree(int v) const { return popcount_row(in_row(v), words); }
  long long markowitz(int v) const {
    return static_cast<long long>(in_degree(v)) * out_degree(v);
  }
  bool has_edge(int u, int w) const { return (out_row(u)[w >> 6] >> (w & 63)) & 1; }

  long long eliminate(int v) {
    const long long cost = markowitz(v);
    const std::uint64_t vbit = 1ull << (v & 63);
    const int vword = v >> 6;
    std::vector<std::uint64_t> vin(in_row(v), in_row(v) + words);
    std::vector<std::uint64_t> vout(out_row(v), out_row(v) + words);

    for (int wi = 0; wi < words; ++wi) {
      std::uint64_t bits = vin[wi];
      while (bits) {
        const int u = wi * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        std::uint64_t* row = out_row(u);
        const int before = popcount_row(row, words);
        for (int k = 0; k < words; ++k) row[k] |= vout[k];
        row[vword] &= ~vbit;
        m += popcount_row(row, words) - before;
      }
    }
    for (int wi = 0; wi < words; ++wi) {
      std::uint64_t bits = vout[wi];
      while (bits) {
        const int w = wi * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        std::uint64_t* row = in_row(w);
        for (int k = 0; k < words; ++k) row[k] |= vin[k];
        row[vword] &= ~vbit;
      }
    }
    m -= popcount_row(vout.data(), words);
    for (int k = 0; k < words; ++k) {
      out_row(v)[k] = 0;
      in_row(v)[k] = 0;
    }
    present[static_cast<size_t>(v)] = 0;
    return cost;
  }

  long long edges() const { return m; }
};

}  // namespace dagelim
