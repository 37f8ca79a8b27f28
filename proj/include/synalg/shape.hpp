#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace synalg {

/// Block structure (n1, ..., nk) of the direct-sum model. One block gives a
/// factor (trivial center); k blocks give a center with 2^k projections.
class ModelShape {
 public:
  explicit ModelShape(std::vector<int> blocks);

  /// Parses "2,3" or "2 3".
  static ModelShape parse(std::string_view text);

  int dim() const { return dim_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int block_size(int b) const { return blocks_[b]; }
  int block_offset(int b) const { return offsets_[b]; }
  int block_of(int index) const;
  const std::vector<int>& blocks() const { return blocks_; }

  std::string to_string() const;

  bool operator==(const ModelShape& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

}  // namespace synalg
