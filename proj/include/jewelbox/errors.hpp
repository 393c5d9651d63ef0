#pragma once

#include <stdexcept>
#include <string>

namespace jewelbox {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct index_out_of_range : error {
  using error::error;
};
struct not_a_forest : error {
  using error::error;
};
struct not_core : error {
  using error::error;
};
struct too_large : error {
  using error::error;
};
struct infeasible_schedule : error {
  using error::error;
};
struct mismatched_schedule : error {
  using error::error;
};
struct empty_word : error {
  using error::error;
};
struct overlap : error {
  using error::error;
};
struct degenerate : error {
  using error::error;
};
struct insufficient_words : error {
  using error::error;
};
struct not_a_partition : error {
  using error::error;
};
struct incompatible : error {
  using error::error;
};
struct not_maximal_tree : error {
  using error::error;
};
struct contains_blown_edge : error {
  using error::error;
};
struct tie_at_budget : error {
  using error::error;
};
struct out_of_domain : error {
  using error::error;
};
struct not_in_jewel : error {
  using error::error;
};
struct degenerate_sample : error {
  using error::error;
};

}  // namespace jewelbox
