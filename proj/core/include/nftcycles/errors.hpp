#pragma once

#include <stdexcept>
#include <string>

namespace nftcycles {

// Unrecoverable input problem: bad header, undecodable bytes, or any
// rejection when strict mode is on.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated graph contract, e.g. duplicate (nft_id, tx_id) pair.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter combination (thresholds, ring timing, band edges).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nftcycles
