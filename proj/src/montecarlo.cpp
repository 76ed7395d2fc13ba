#include "montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace entangle {

namespace {

constexpr std::uint64_t kBlock = 1024;
constexpr std::uint32_t kMaxRetries = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

unsigned worker_count(unsigned requested, std::size_t blocks) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(blocks, 1)));
}

// Runs fn(begin, end) over fixed index blocks; results come back in block order so
// any later reduction is independent of the thread count.
template <class Block, class Fn>
std::vector<Block> run_blocks(std::uint64_t n, unsigned threads, Fn fn) {
  const std::size_t blocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
  std::vector<Block> out(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        out[b] = fn(b * kBlock, std::min<std::uint64_t>(n, (b + 1) * kBlock));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = blocks;
      }
    }
  };
  const unsigned t = worker_count(threads, blocks);
  if (t == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

struct Generic {
  Diagram diagram;
  std::uint64_t rejected = 0;
};

Generic generic_projection(const PolyChain& chain, std::uint64_t seed, std::uint64_t index) {
  Generic g;
  for (std::uint32_t r = 0; r < kMaxRetries; ++r) {
    auto d = project(chain, sample_direction(seed, index, r));
    if (d) {
      g.diagram = std::move(*d);
      return g;
    }
    ++g.rejected;
  }
  throw ConditioningError("no generic projection found after " + std::to_string(kMaxRetries) +
                          " directions for sample " + std::to_string(index));
}

void check_rejection(std::uint64_t samples, std::uint64_t rejected) {
  if (2 * rejected > samples + rejected)
    throw ConditioningError("more than half of the sampled directions were degenerate");
}

struct PolyBlock {
  std::map<int, std::pair<double, double>> sums;  // exponent -> (sum, sum of squares)
  std::uint64_t rejected = 0;
  LaurentPoly first;
  bool constant = true;
};

BracketEstimate average(const PolyChain& chain, const McOptions& opt, bool normalize) {
  if (opt.samples < 100) throw InvalidArgument("Monte-Carlo estimates need at least 100 samples");
  validate_chain(chain);
  auto blocks = run_blocks<PolyBlock>(opt.samples, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    PolyBlock blk;
    for (std::uint64_t i = b; i < e; ++i) {
      Generic g = generic_projection(chain, opt.seed, i);
      blk.rejected += g.rejected;
      const LaurentPoly p = normalize ? normalized_bracket(g.diagram) : bracket(g.diagram);
      for (const auto& [k, c] : p.terms()) {
        auto& s = blk.sums[k];
        s.first += c;
        s.second += c * c;
      }
      if (i == b)
        blk.first = p;
      else if (blk.constant && !p.approx_equal(blk.first, 1e-9))
        blk.constant = false;
    }
    return blk;
  });

  BracketEstimate est;
  est.samples = opt.samples;
  est.seed = opt.seed;
  std::map<int, std::pair<double, double>> total;
  bool constant = true;
  for (const PolyBlock& blk : blocks) {
    est.rejected += blk.rejected;
    for (const auto& [k, s] : blk.sums) {
      total[k].first += s.first;
      total[k].second += s.second;
    }
    constant = constant && blk.constant && blk.first.approx_equal(blocks.front().first, 1e-9);
  }
  check_rejection(est.samples, est.rejected);
  if (normalize && chain.closed && !constant)
    throw InternalError("normalized bracket of a closed chain changed between projections");

  const double n = static_cast<double>(opt.samples);
  LaurentPoly::Terms mean;
  for (const auto& [k, s] : total) {
    const double m = s.first / n;
    mean[k] = m;
    const double var = std::max(0.0, (s.second - n * m * m) / (n - 1.0));
    est.stderr_by_exp[k] = std::sqrt(var / n);
  }
  est.mean = LaurentPoly(std::move(mean));
  return est;
}

}  // namespace

Point3 sample_direction(std::uint64_t seed, std::uint64_t index, std::uint32_t retry) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ index);
  key = splitmix64(key ^ (static_cast<std::uint64_t>(retry) << 32));
  const double z = 2.0 * to_unit(splitmix64(key)) - 1.0;
  const double phi = 2.0 * M_PI * to_unit(splitmix64(key + 1));
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

BracketEstimate mc_bracket(const PolyChain& chain, const McOptions& opt) { return average(chain, opt, false); }

BracketEstimate mc_jones(const PolyChain& chain, const McOptions& opt) { return average(chain, opt, true); }

BracketEstimate to_variable_t(const BracketEstimate& e) {
  if (e.variable == 't') return e;
  BracketEstimate r = e;
  r.mean = substitute_t(e.mean);
  r.stderr_by_exp.clear();
  for (const auto& [k, s] : e.stderr_by_exp) r.stderr_by_exp[-k / 4] = s;
  r.variable = 't';
  return r;
}

nlohmann::json to_json(const BracketEstimate& e) {
  nlohmann::json se = nlohmann::json::array();
  for (auto it = e.stderr_by_exp.rbegin(); it != e.stderr_by_exp.rend(); ++it)
    se.push_back(nlohmann::json::array({it->first, it->second}));
  return {{"variable", std::string(1, e.variable)},
          {"polynomial", to_json(e.mean)},
          {"stderr", se},
          {"samples", e.samples},
          {"rejected", e.rejected},
          {"seed", e.seed}};
}

namespace {

std::string default_classifier(const Diagram& d) {
  return classify_4edge(d).type == Knotoid4::k21 ? "k2.1" : "k0";
}

struct CountBlock {
  std::map<std::pair<std::string, int>, std::uint64_t> counts;
  std::uint64_t rejected = 0;
};

}  // namespace

DistributionEstimate mc_distribution(const PolyChain& chain, const McOptions& opt,
                                     const DiagramClassifier& classifier) {
  if (opt.samples < 100) throw InvalidArgument("Monte-Carlo estimates need at least 100 samples");
  validate_chain(chain);
  if (!classifier && (chain.closed || chain.edge_count() != 4))
    throw InvalidArgument("the built-in classifier handles 4-edge open chains only");
  const DiagramClassifier& classify = classifier ? classifier : DiagramClassifier(default_classifier);
  auto blocks = run_blocks<CountBlock>(opt.samples, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    CountBlock blk;
    for (std::uint64_t i = b; i < e; ++i) {
      Generic g = generic_projection(chain, opt.seed, i);
      blk.rejected += g.rejected;
      ++blk.counts[{classify(g.diagram), diagram_writhe(g.diagram)}];
    }
    return blk;
  });
  DistributionEstimate est;
  est.samples = opt.samples;
  est.seed = opt.seed;
  std::map<std::pair<std::string, int>, std::uint64_t> total;
  for (const CountBlock& blk : blocks) {
    est.rejected += blk.rejected;
    for (const auto& [key, n] : blk.counts) total[key] += n;
  }
  check_rejection(est.samples, est.rejected);
  const double n = static_cast<double>(opt.samples);
  for (const auto& [key, cnt] : total) {
    const double p = static_cast<double>(cnt) / n;
    est.entries[key] = {p, std::sqrt(p * (1.0 - p) / n)};
  }
  return est;
}

nlohmann::json to_json(const DistributionEstimate& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [key, v] : e.entries)
    rows.push_back({{"class", key.first}, {"writhe", key.second}, {"probability", v.probability},
                    {"stderr", v.stderr_}});
  return {{"entries", rows}, {"samples", e.samples}, {"rejected", e.rejected}, {"seed", e.seed}};
}

}  // namespace entangle
