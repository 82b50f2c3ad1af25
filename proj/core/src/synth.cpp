#include "nftcycles/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "nftcycles/errors.hpp"
#include "nftcycles/ingest.hpp"

namespace nftcycles {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

// Explicit bounded draws instead of std::uniform_int_distribution, whose
// output sequence is implementation-defined.
std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

std::int64_t rnd_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(rnd_below(rng, std::uint64_t(hi - lo + 1)));
}

double rnd_unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

std::string hex_suffix(std::uint64_t value, int width) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%0*llx", width, static_cast<unsigned long long>(value));
  return std::string(buf);
}

std::string background_wallet(int index) { return "0xb" + hex_suffix(std::uint64_t(index), 5); }

std::string ring_wallet(int ring, int member) {
  return "0xr" + hex_suffix(std::uint64_t(ring), 2) + hex_suffix(std::uint64_t(member), 3);
}

std::string background_nft(int index) { return "nftb" + hex_suffix(std::uint64_t(index), 5); }

std::string ring_nft(int ring, int index) {
  return "nftr" + hex_suffix(std::uint64_t(ring), 2) + hex_suffix(std::uint64_t(index), 3);
}

void validate(const SynthConfig& config) {
  if (config.horizon_seconds < 1) throw ConfigError("horizon_seconds must be positive");
  if (config.start_time < 0) throw ConfigError("start_time must be >= 0");
  if (config.n_background_trades > 0) {
    if (config.n_wallets < 2) throw ConfigError("background trades need at least 2 wallets");
    if (config.n_nfts < 1) throw ConfigError("background trades need at least 1 nft");
  }
  if (config.contamination_rate < 0.0 || config.contamination_rate > 1.0) {
    throw ConfigError("contamination_rate must be in [0, 1]");
  }
  for (const RingSpec& ring : config.rings) {
    if (ring.ring_size < 2) throw ConfigError("ring_size must be >= 2");
    if (ring.nft_count < 1) throw ConfigError("ring nft_count must be >= 1");
    if (ring.traversal_count < 1) throw ConfigError("traversal_count must be >= 1");
    if (ring.jitter_seconds < 0) throw ConfigError("jitter_seconds must be >= 0");
    if (ring.jitter_seconds >= ring.period_seconds) {
      throw ConfigError("infeasible ring timing: jitter (" +
                        std::to_string(ring.jitter_seconds) + "s) must be < period (" +
                        std::to_string(ring.period_seconds) + "s)");
    }
    if (ring.band_hit_ratio < 0.0 || ring.band_hit_ratio > 1.0) {
      throw ConfigError("band_hit_ratio must be in [0, 1]");
    }
    if (ring.price_base_usd < 0) throw ConfigError("price_base_usd must be >= 0");
  }
}

struct PendingTrade {
  TradeRecord record;
  bool background = false;
};

std::int64_t draw_delta(std::mt19937_64& rng, const RingSpec& ring, bool in_band) {
  const std::int64_t period = ring.period_seconds;
  const std::int64_t jitter = ring.jitter_seconds;
  if (in_band) return rnd_range(rng, period - jitter, period + jitter);

  // Off-band deltas keep a 2*margin clearance from the period so any
  // measured band no wider than period +/- 2*margin excludes them.
  const std::int64_t margin = std::max<std::int64_t>(jitter, 1);
  const std::int64_t hi_lo = period + 2 * margin + 1;
  const std::int64_t hi_hi = period + 6 * margin;
  const std::int64_t lo_hi = period - 2 * margin - 1;
  const std::int64_t lo_lo = std::max<std::int64_t>(1, period - 6 * margin);
  const bool low_side_ok = lo_hi >= lo_lo;
  if (low_side_ok && (rng() & 1)) return rnd_range(rng, lo_lo, lo_hi);
  return rnd_range(rng, hi_lo, hi_hi);
}

Money log_uniform_price(std::mt19937_64& rng) {
  // $1 .. $10,000
  const double lo = std::log(1e6);
  const double hi = std::log(1e10);
  double micro = std::exp(lo + rnd_unit(rng) * (hi - lo));
  return Money(std::llround(micro));
}

void randomize_case(std::string& wallet, std::mt19937_64& rng) {
  for (char& c : wallet) {
    if (c >= 'a' && c <= 'z' && (rng() & 1)) c = char(c - 'a' + 'A');
  }
}

std::string corrupted_row(const TradeRecord& rec, std::uint64_t kind) {
  // Ids generated here never need CSV quoting.
  std::string row = rec.tx_id + ',' + std::to_string(rec.block) + ',';
  std::string timestamp = std::to_string(rec.timestamp);
  std::string buyer = rec.buyer;
  std::string price = format_money(rec.price_usd);
  switch (kind % 3) {
    case 0:
      price = "-1";  // negative_price
      break;
    case 1:
      timestamp = "notatime";  // bad_timestamp
      break;
    default:
      buyer.clear();  // missing_field
      break;
  }
  row += timestamp + ',' + rec.nft_id + ',' + rec.collection + ',' + rec.seller + ',' + buyer +
         ',' + price;
  return row;
}

}  // namespace

GroundTruth generate_corpus(const SynthConfig& config, std::ostream& trades_out,
                            std::ostream* labels_out) {
  validate(config);

  GroundTruth truth;
  std::vector<PendingTrade> trades;
  std::uint64_t tx_counter = 0;
  auto next_tx = [&tx_counter] { return "0x" + hex_suffix(tx_counter++, 16); };

  // Ring trades.
  for (std::size_t r = 0; r < config.rings.size(); ++r) {
    const RingSpec& ring = config.rings[r];
    RingTruth rt;
    rt.ring_id = int(r);
    for (int m = 0; m < ring.ring_size; ++m) rt.wallets.push_back(ring_wallet(int(r), m));
    rt.expected_cycles_per_wallet =
        std::uint64_t(ring.traversal_count - 1) * std::uint64_t(ring.nft_count);
    rt.expected_cycles_per_nft =
        std::uint64_t(ring.ring_size) * std::uint64_t(ring.traversal_count - 1);
    rt.band_lo_seconds = ring.period_seconds - ring.jitter_seconds;
    rt.band_hi_seconds = ring.period_seconds + ring.jitter_seconds;
    rt.band_hit_ratio = ring.band_hit_ratio;

    const std::string collection = "ring" + hex_suffix(r, 2);
    for (int j = 0; j < ring.nft_count; ++j) {
      auto rng = make_rng(config.seed, 0x52494E47ULL + r * 1000003ULL + std::uint64_t(j));
      rt.nft_ids.push_back(ring_nft(int(r), j));

      const int total_steps = ring.ring_size * ring.traversal_count;
      const int n_deltas = total_steps - 1;

      // Exact-count band plan: round(ratio * n) deltas in-band, scattered by
      // a seeded shuffle.
      std::vector<char> in_band(std::size_t(std::max(n_deltas, 0)), 0);
      if (n_deltas > 0) {
        const auto planted = std::int64_t(std::llround(ring.band_hit_ratio * n_deltas));
        for (std::int64_t i = 0; i < planted; ++i) in_band[std::size_t(i)] = 1;
        for (std::size_t i = in_band.size(); i > 1; --i) {
          std::swap(in_band[i - 1], in_band[rnd_below(rng, i)]);
        }
      }

      std::int64_t t = config.start_time + std::int64_t(r) * 7919 + std::int64_t(j) * 104729;
      int owner = 0;
      for (int step = 0; step < total_steps; ++step) {
        const int buyer = (step + 1) % ring.ring_size;
        PendingTrade pt;
        pt.record.tx_id = next_tx();
        pt.record.timestamp = t;
        pt.record.nft_id = rt.nft_ids.back();
        pt.record.collection = collection;
        pt.record.seller = rt.wallets[std::size_t(owner)];
        pt.record.buyer = rt.wallets[std::size_t(buyer)];
        pt.record.price_usd =
            std::max<Money>(0, ring.price_base_usd + Money(step) * ring.price_step_usd);
        trades.push_back(std::move(pt));
        owner = buyer;
        if (step < n_deltas) t += draw_delta(rng, ring, in_band[std::size_t(step)] != 0);
      }
    }
    truth.rings.push_back(std::move(rt));
  }

  // Background trades.
  if (config.n_background_trades > 0) {
    auto rng = make_rng(config.seed, 0xBAC6ULL);
    std::unordered_map<std::string, std::unordered_set<int>> used_buyers;
    std::vector<std::string> ring_nft_pool;
    for (const auto& rt : truth.rings) {
      ring_nft_pool.insert(ring_nft_pool.end(), rt.nft_ids.begin(), rt.nft_ids.end());
    }

    for (std::uint64_t i = 0; i < config.n_background_trades; ++i) {
      PendingTrade pt;
      pt.background = true;

      std::string nft;
      if (!ring_nft_pool.empty() && config.contamination_rate > 0.0 &&
          rnd_unit(rng) < config.contamination_rate) {
        nft = ring_nft_pool[rnd_below(rng, ring_nft_pool.size())];
      } else {
        nft = background_nft(int(rnd_below(rng, std::uint64_t(config.n_nfts))));
      }

      int buyer = int(rnd_below(rng, std::uint64_t(config.n_wallets)));
      if (!config.allow_buyer_reuse) {
        auto& used = used_buyers[nft];
        int tries = 0;
        while (used.count(buyer)) {
          if (++tries > 4096) {
            throw ConfigError("background buyer pool exhausted for nft " + nft +
                              "; raise n_wallets or allow_buyer_reuse");
          }
          buyer = int(rnd_below(rng, std::uint64_t(config.n_wallets)));
        }
        used.insert(buyer);
      }
      int seller = int(rnd_below(rng, std::uint64_t(config.n_wallets)));
      while (seller == buyer) seller = int(rnd_below(rng, std::uint64_t(config.n_wallets)));

      pt.record.tx_id = next_tx();
      pt.record.timestamp =
          config.start_time + std::int64_t(rnd_below(rng, std::uint64_t(config.horizon_seconds)));
      pt.record.nft_id = std::move(nft);
      pt.record.collection = "bg";
      pt.record.seller = background_wallet(seller);
      pt.record.buyer = background_wallet(buyer);
      pt.record.price_usd = log_uniform_price(rng);
      trades.push_back(std::move(pt));
    }
    truth.background_trades = config.n_background_trades;
  }

  std::sort(trades.begin(), trades.end(), [](const PendingTrade& a, const PendingTrade& b) {
    if (a.record.timestamp != b.record.timestamp) return a.record.timestamp < b.record.timestamp;
    return a.record.tx_id < b.record.tx_id;
  });
  for (std::size_t i = 0; i < trades.size(); ++i) {
    trades[i].record.block = 1 + i / 4;
  }

  // Pick corruption victims among background rows only, so ring labels stay
  // sound.
  std::unordered_map<std::size_t, std::uint64_t> corrupt_kind;
  if (config.corrupt_rows > 0) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < trades.size(); ++i) {
      if (trades[i].background) candidates.push_back(i);
    }
    if (config.corrupt_rows > candidates.size()) {
      throw ConfigError("corrupt_rows exceeds background row count");
    }
    auto rng = make_rng(config.seed, 0xC0B2ULL);
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::swap(candidates[i - 1], candidates[rnd_below(rng, i)]);
    }
    for (std::uint64_t k = 0; k < config.corrupt_rows; ++k) {
      corrupt_kind.emplace(candidates[std::size_t(k)], k);
    }
    truth.corrupted_rows = config.corrupt_rows;
  }

  std::mt19937_64 case_rng = make_rng(config.seed, 0xCA5EULL);
  trades_out << kTradeCsvHeader << '\n';
  for (std::size_t i = 0; i < trades.size(); ++i) {
    TradeRecord& rec = trades[i].record;
    if (config.randomize_wallet_case) {
      randomize_case(rec.seller, case_rng);
      randomize_case(rec.buyer, case_rng);
    }
    if (auto it = corrupt_kind.find(i); it != corrupt_kind.end()) {
      trades_out << corrupted_row(rec, it->second) << '\n';
    } else {
      trades_out << canonical_csv_row(rec) << '\n';
    }
  }
  truth.total_rows = trades.size();

  if (labels_out) {
    *labels_out << kLabelsCsvHeader << '\n';
    for (const auto& rt : truth.rings) {
      for (const auto& wallet : rt.wallets) {
        *labels_out << wallet << ',' << rt.ring_id << ',' << rt.expected_cycles_per_wallet
                    << '\n';
      }
    }
  }
  return truth;
}

std::vector<TradeRecord> random_instance(std::uint64_t seed, int max_wallets, int max_nfts,
                                         int max_trades) {
  if (max_wallets < 1 || max_nfts < 1 || max_trades < 0) {
    throw ConfigError("random_instance limits must be positive");
  }
  auto rng = make_rng(seed, 0x125700ULL);
  const int n_wallets = 1 + int(rnd_below(rng, std::uint64_t(max_wallets)));
  const int n_nfts = 1 + int(rnd_below(rng, std::uint64_t(max_nfts)));
  const int n_trades = int(rnd_below(rng, std::uint64_t(max_trades) + 1));

  std::vector<TradeRecord> records;
  records.reserve(std::size_t(n_trades));
  for (int i = 0; i < n_trades; ++i) {
    TradeRecord rec;
    rec.tx_id = "t" + std::to_string(i);
    rec.nft_id = "n" + std::to_string(rnd_below(rng, std::uint64_t(n_nfts)));
    rec.buyer = "w" + std::to_string(rnd_below(rng, std::uint64_t(n_wallets)));
    rec.seller = "w" + std::to_string(rnd_below(rng, std::uint64_t(n_wallets)));
    // Dense range so composite-key ties actually occur.
    rec.timestamp = std::int64_t(rnd_below(rng, std::uint64_t(2 * n_trades + 1)));
    rec.block = (rng() & 1) ? 0 : rnd_below(rng, std::uint64_t(n_trades) + 2);
    rec.price_usd = Money(rnd_below(rng, 200'000'001));  // $0 .. $200
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace nftcycles
