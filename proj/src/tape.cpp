#include "catiso/tape.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "catiso/errors.hpp"
#include "catiso/rng.hpp"

namespace catiso {

Digest digest_bits(const Bits& bits) {
  std::vector<unsigned char> packed(8 + (bits.size() + 7) / 8, 0);
  std::uint64_t len = bits.size();
  for (int i = 0; i < 8; ++i) packed[i] = static_cast<unsigned char>(len >> (8 * (7 - i)));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) packed[8 + i / 8] |= static_cast<unsigned char>(0x80U >> (i % 8));
  }
  Digest out{};
  unsigned int out_len = 0;
  if (EVP_Digest(packed.data(), packed.size(), out.data(), &out_len, EVP_sha256(), nullptr) != 1 ||
      out_len != out.size()) {
    throw Error("SHA-256 digest failed");
  }
  return out;
}

Bits load_fill_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open tape fill file: " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::string_view view(data);
  while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) view.remove_prefix(1);
  if (view.substr(0, 2) == "0x" || view.substr(0, 2) == "0X") view.remove_prefix(2);
  bool is_hex = !view.empty();
  for (char ch : view) {
    if (!std::isxdigit(static_cast<unsigned char>(ch)) && !std::isspace(static_cast<unsigned char>(ch))) {
      is_hex = false;
      break;
    }
  }

  Bits out;
  if (is_hex) {
    for (char ch : view) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      int nibble = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0' : std::tolower(ch) - 'a' + 10;
      for (int b = 3; b >= 0; --b) out.push_back(((nibble >> b) & 1) != 0);
    }
  } else {
    for (unsigned char byte : data) {
      for (int b = 7; b >= 0; --b) out.push_back(((byte >> b) & 1U) != 0);
    }
  }
  return out;
}

void SpaceLedger::record(std::size_t block, std::size_t bits_before, std::size_t bits_after) {
  if (bits_after > bits_before) throw PreconditionError("ledger entry would grow the block");
  release(block);
  entries_[block] = Entry{block, bits_before, bits_after};
  freed_ += bits_before - bits_after;
  if (freed_ > peak_) peak_ = freed_;
}

void SpaceLedger::release(std::size_t block) {
  auto it = entries_.find(block);
  if (it == entries_.end()) return;
  freed_ -= it->second.bits_before - it->second.bits_after;
  entries_.erase(it);
}

CatalyticTape::CatalyticTape(std::size_t total_bits, std::size_t block_len, const TapeFill& fill)
    : block_len_(block_len) {
  if (total_bits == 0) throw ConfigError("catalytic tape must have positive length");
  if (block_len == 0 || total_bits % block_len != 0) {
    throw ConfigError("tape length " + std::to_string(total_bits) +
                      " is not a multiple of block length " + std::to_string(block_len));
  }
  switch (fill.kind) {
    case TapeFill::Kind::Zeros:
      bits_.assign(total_bits, false);
      break;
    case TapeFill::Kind::Random: {
      auto engine = make_engine(fill.seed);
      bits_.resize(total_bits);
      std::uint64_t word = 0;
      for (std::size_t i = 0; i < total_bits; ++i) {
        if (i % 64 == 0) word = engine();
        bits_[i] = ((word >> (i % 64)) & 1U) != 0;
      }
      break;
    }
    case TapeFill::Kind::Explicit:
      if (fill.bits.size() < total_bits) {
        throw ConfigError("explicit fill has " + std::to_string(fill.bits.size()) +
                          " bits, tape needs " + std::to_string(total_bits));
      }
      bits_.assign(fill.bits.begin(), fill.bits.begin() + static_cast<std::ptrdiff_t>(total_bits));
      break;
  }
  origin_ = digest_bits(bits_);
}

void CatalyticTape::check_block(std::size_t k) const {
  if (k >= block_count()) {
    throw PreconditionError("block index " + std::to_string(k) + " out of range (" +
                            std::to_string(block_count()) + " blocks)");
  }
}

Bits CatalyticTape::read_block(std::size_t k) const { return read_payload(k, block_len_); }

Bits CatalyticTape::read_payload(std::size_t k, std::size_t len) const {
  check_block(k);
  if (len > block_len_) throw PreconditionError("payload length exceeds block length");
  auto first = bits_.begin() + static_cast<std::ptrdiff_t>(k * block_len_);
  return Bits(first, first + static_cast<std::ptrdiff_t>(len));
}

void CatalyticTape::write_block(std::size_t k, const Bits& payload, SpaceLedger& ledger) {
  check_block(k);
  if (payload.size() > block_len_) {
    throw PreconditionError("payload of " + std::to_string(payload.size()) +
                            " bits does not fit a " + std::to_string(block_len_) + "-bit block");
  }
  const std::size_t base = k * block_len_;
  for (std::size_t i = 0; i < block_len_; ++i) {
    bits_[base + i] = i < payload.size() ? static_cast<bool>(payload[i]) : false;
  }
  if (payload.size() == block_len_) {
    ledger.release(k);
  } else {
    ledger.record(k, block_len_, payload.size());
  }
}

bool CatalyticTape::verify_restored() const { return digest_bits(bits_) == origin_; }

void CatalyticTape::set_bit(std::size_t index, bool value) {
  if (index >= bits_.size()) throw PreconditionError("bit index out of range");
  bits_[index] = value;
}

}  // namespace catiso
