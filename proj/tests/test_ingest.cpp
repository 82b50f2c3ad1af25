#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "nftcycles/errors.hpp"
#include "nftcycles/ingest.hpp"
#include "nftcycles/synth.hpp"
#include "support/fixtures.hpp"

using namespace nftcycles;

namespace {

std::pair<std::vector<TradeRecord>, IngestReport> parse_csv(const std::string& text,
                                                            bool strict = false) {
  std::istringstream in(text);
  ParseOptions options;
  options.strict = strict;
  return parse_trades_all(in, TradeFormat::kCsv, options);
}

const std::string kHeader = std::string(kTradeCsvHeader) + "\n";

}  // namespace

TEST_CASE("direct field mapping") {
  auto [records, report] =
      parse_csv(kHeader + "0xabc,1,1500000000,nftB,kitties,walletA,walletB,100.50\n");
  REQUIRE(records.size() == 1);
  CHECK(report.records_accepted == 1);
  CHECK(report.records_rejected == 0);
  const TradeRecord& rec = records[0];
  CHECK(rec.tx_id == "0xabc");
  CHECK(rec.block == 1);
  CHECK(rec.timestamp == 1500000000);
  CHECK(rec.nft_id == "nftB");
  CHECK(rec.collection == "kitties");
  CHECK(rec.seller == "walletA");
  CHECK(rec.buyer == "walletB");
  CHECK(rec.price_usd == 100'500'000);
  CHECK(report.time_range == std::pair<std::int64_t, std::int64_t>{1500000000, 1500000000});
}

TEST_CASE("rejection reasons") {
  SUBCASE("negative price") {
    auto [records, report] = parse_csv(kHeader + "0xa,1,10,n1,,s,b,-3\n");
    CHECK(records.empty());
    CHECK(report.records_rejected == 1);
    CHECK(report.rejection_reasons.at("negative_price") == 1);
  }
  SUBCASE("bad timestamp") {
    auto [records, report] = parse_csv(kHeader + "0xa,1,notatime,n1,,s,b,3\n" +
                                       "0xb,1,-5,n1,,s,b,3\n");
    CHECK(report.rejection_reasons.at("bad_timestamp") == 2);
  }
  SUBCASE("missing fields") {
    auto [records, report] = parse_csv(kHeader + "0xa,1,10,n1,,s,b\n" +    // 7 fields
                                       ",1,10,n1,,s,b,3\n" +               // empty tx
                                       "0xc,1,10,,,s,b,3\n" +              // empty nft
                                       "0xd,1,10,n1,,s,,3\n" +             // empty buyer
                                       "0xe,1,,n1,,s,b,3\n");              // empty timestamp
    CHECK(report.records_rejected == 5);
    CHECK(report.rejection_reasons.at("missing_field") == 5);
  }
  SUBCASE("bad fields") {
    auto [records, report] = parse_csv(kHeader + "0xa,xx,10,n1,,s,b,3\n" +  // bad block
                                       "0xb,1,10,n1,,s,b,3,extra\n" +       // 9 fields
                                       "0xc,1,10,n1,,s,b,1.2345678\n");     // 7 frac digits
    CHECK(report.rejection_reasons.at("bad_field") == 3);
  }
  SUBCASE("empty block allowed") {
    auto [records, report] = parse_csv(kHeader + "0xa,,10,n1,,s,b,3\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].block == 0);
  }
  SUBCASE("zero price allowed") {
    auto [records, report] = parse_csv(kHeader + "0xa,1,10,n1,,s,b,0\n");
    CHECK(records.size() == 1);
  }
  SUBCASE("empty seller allowed") {
    auto [records, report] = parse_csv(kHeader + "0xa,1,10,n1,,,b,3\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].seller.empty());
  }
}

TEST_CASE("header-only input reports nothing") {
  auto [records, report] = parse_csv(kHeader);
  CHECK(records.empty());
  CHECK(report.records_accepted == 0);
  CHECK(report.records_rejected == 0);
  CHECK_FALSE(report.time_range.has_value());  // defined iff something was accepted
}

TEST_CASE("fatal errors") {
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(parse_csv("tx,block\n0xa,1\n"), IngestError);
    CHECK_THROWS_AS(parse_csv(""), IngestError);
  }
  SUBCASE("undecodable bytes") {
    std::string bad = kHeader + "0xa,1,10,n1,,s,b,3\n";
    bad += "0xb,1,10,n\xFF\xFE,,s,b,3\n";
    CHECK_THROWS_AS(parse_csv(bad), IngestError);
  }
  SUBCASE("strict upgrades rejection") {
    CHECK_THROWS_AS(parse_csv(kHeader + "0xa,1,10,n1,,s,b,-3\n", true), IngestError);
    CHECK_NOTHROW(parse_csv(kHeader + "0xa,1,10,n1,,s,b,3\n", true));
  }
}

TEST_CASE("jsonl parsing") {
  std::istringstream in(
      R"({"tx_hash":"0xabc","block_number":1,"timestamp":1500000000,"nft_id":"nftB","collection":"kitties","seller":"walletA","buyer":"walletB","price_usd":"100.50"})"
      "\n"
      R"({"tx_hash":"0xdef","timestamp":"1500000001","nft_id":"nftB","buyer":"walletC","price_usd":12.25})"
      "\n"
      "not json\n"
      R"({"tx_hash":"0xghi","timestamp":1500000002,"nft_id":"nftB","buyer":"walletD","price_usd":"-1"})"
      "\n");
  auto [records, report] = parse_trades_all(in, TradeFormat::kJsonl);
  REQUIRE(records.size() == 2);
  CHECK(records[0].price_usd == 100'500'000);
  CHECK(records[0].block == 1);
  CHECK(records[1].price_usd == 12'250'000);
  CHECK(records[1].block == 0);
  CHECK(records[1].seller.empty());
  CHECK(report.records_rejected == 2);
  CHECK(report.rejection_reasons.at("bad_field") == 1);
  CHECK(report.rejection_reasons.at("negative_price") == 1);
}

TEST_CASE("normalize_wallets lower-cases and trims") {
  TradeRecord rec = testsupport::trade("t0", 1, "n", " SellerX\t", "0xAbC ", 5);
  normalize_wallets(rec);
  CHECK(rec.buyer == "0xabc");
  CHECK(rec.seller == "sellerx");

  TradeRecord again = rec;
  normalize_wallets(again);
  CHECK(again == rec);  // idempotent on an already-normalized record
}

TEST_CASE("normalize_wallets is idempotent on random input") {
  std::mt19937_64 rng(7);
  auto random_wallet = [&rng] {
    std::string s;
    const char* alphabet = "aAbB01 \tzZ";
    for (int i = 0; i < 12; ++i) s.push_back(alphabet[rng() % 10]);
    return s;
  };
  for (int i = 0; i < 500; ++i) {
    TradeRecord rec = testsupport::trade("t", 1, "n", random_wallet(), random_wallet(), 1);
    TradeRecord once = rec;
    normalize_wallets(once);
    TradeRecord twice = once;
    normalize_wallets(twice);
    CHECK(once == twice);
  }
}

TEST_CASE("canonical rows round-trip byte-identically") {
  std::mt19937_64 rng(99);
  auto random_field = [&rng](bool allow_tricky) {
    std::string s;
    const std::string plain = "abcdef0123456789";
    // commas and quotes exercise the quoting path; the format itself is
    // line-oriented, so fields never contain newlines
    const std::string tricky = "abc,\"x\" ";
    const std::string& alphabet = allow_tricky && (rng() % 4 == 0) ? tricky : plain;
    std::size_t len = 1 + rng() % 12;
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    TradeRecord rec;
    rec.tx_id = random_field(true);
    rec.block = rng() % 3 == 0 ? 0 : rng() % 100000;
    rec.timestamp = std::int64_t(rng() % 2'000'000'000);
    rec.nft_id = random_field(true);
    rec.collection = rng() % 3 == 0 ? "" : random_field(true);
    rec.seller = rng() % 5 == 0 ? "" : random_field(false);
    rec.buyer = random_field(false);
    rec.price_usd = Money(rng() % 1'000'000'000'000ULL);

    std::string row = canonical_csv_row(rec);
    auto [records, report] = parse_csv(kHeader + row + "\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0] == rec);
    CHECK(canonical_csv_row(records[0]) == row);
  }
}

TEST_CASE("fuzzed lines never desync the report counts") {
  std::mt19937_64 rng(1234);
  const std::string junk_chars = "0x,abc.-19\"\t{}";
  for (int trial = 0; trial < 50; ++trial) {
    std::string text = kHeader;
    std::uint64_t rows = 0;
    for (int i = 0; i < 40; ++i) {
      if (rng() % 2) {
        text += "0xt" + std::to_string(i) + ",1,10,n1,,s,b,3\n";
        ++rows;
      } else {
        std::string line;
        std::size_t len = 1 + rng() % 30;
        for (std::size_t k = 0; k < len; ++k) line.push_back(junk_chars[rng() % junk_chars.size()]);
        if (!line.empty()) {
          text += line + "\n";
          ++rows;
        }
      }
    }
    auto [records, report] = parse_csv(text);
    CHECK(report.records_accepted + report.records_rejected == rows);
    CHECK(records.size() == report.records_accepted);
  }
}

TEST_CASE("synthetic corpus with known corruption count") {
  SynthConfig config;
  config.seed = 11;
  config.n_wallets = 500;
  config.n_nfts = 50;
  config.n_background_trades = 1000;
  config.corrupt_rows = 3;
  std::ostringstream corpus;
  generate_corpus(config, corpus);

  auto [records, report] = parse_csv(corpus.str());
  CHECK(report.records_accepted == 997);
  CHECK(report.records_rejected == 3);
  CHECK(report.rejection_reasons.size() == 3);  // one of each corruption kind
}

TEST_CASE("mixed-case wallet variants collapse after normalization") {
  SynthConfig config;
  config.seed = 5;
  config.n_wallets = 3;
  config.n_nfts = 2;
  config.n_background_trades = 100;
  config.allow_buyer_reuse = true;
  config.randomize_wallet_case = true;
  std::ostringstream corpus;
  generate_corpus(config, corpus);

  auto [records, report] = parse_csv(corpus.str());
  REQUIRE(report.records_accepted == 100);

  std::set<std::string> raw_buyers;
  for (const auto& rec : records) raw_buyers.insert(rec.buyer);
  normalize_wallets(records);
  std::set<std::string> normalized_buyers;
  for (const auto& rec : records) normalized_buyers.insert(rec.buyer);

  CHECK(raw_buyers.size() > normalized_buyers.size());
  CHECK(normalized_buyers.size() <= 3);
  // every raw spelling maps onto one of the normalized wallets
  for (std::string raw : raw_buyers) {
    for (char& c : raw) c = char(std::tolower(static_cast<unsigned char>(c)));
    CHECK(normalized_buyers.count(raw) == 1);
  }
}
