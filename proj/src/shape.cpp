#include "synalg/shape.hpp"

#include <charconv>

#include "synalg/error.hpp"

namespace synalg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShapeMismatch: return "shape mismatch";
    case ErrorKind::kInvalidShape: return "invalid shape";
    case ErrorKind::kNotSymmetric: return "not symmetric";
    case ErrorKind::kOffBlock: return "off-block entries";
    case ErrorKind::kNotPositive: return "not positive";
    case ErrorKind::kNotInvertible: return "not invertible";
    case ErrorKind::kNoConvergence: return "no convergence";
    case ErrorKind::kNotProjection: return "not a projection";
    case ErrorKind::kNotSymmetry: return "not a symmetry";
    case ErrorKind::kNotPartialSymmetry: return "not a partial symmetry";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kRankMismatch: return "rank mismatch";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kCapExceeded: return "cap exceeded";
  }
  return "error";
}

ModelShape::ModelShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::kInvalidShape, "no blocks");
  offsets_.reserve(blocks_.size());
  for (int n : blocks_) {
    if (n < 1) throw Error(ErrorKind::kInvalidShape, "block dimension must be >= 1");
    offsets_.push_back(dim_);
    dim_ += n;
  }
}

ModelShape ModelShape::parse(std::string_view text) {
  std::vector<int> blocks;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == '\t')) ++i;
    if (i == text.size()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw Error(ErrorKind::kInvalidShape, "cannot parse shape '" + std::string(text) + "'");
    }
    blocks.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return ModelShape(std::move(blocks));
}

int ModelShape::block_of(int index) const {
  for (int b = num_blocks() - 1; b >= 0; --b) {
    if (index >= offsets_[b]) return b;
  }
  return 0;
}

std::string ModelShape::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += ',';
    out += std::to_string(blocks_[b]);
  }
  return out;
}

}  // namespace synalg
