#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace teleskope {

// Precondition / API-contract violations (sizes, ranges, malformed values).
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Lexical errors while turning user text into exact scalars.
class ParseError : public std::invalid_argument {
public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// A subset whose signed length sum is exactly zero: neither long nor short.
class DegenerateSubsetError : public std::domain_error {
public:
  DegenerateSubsetError(const std::string& what, std::vector<int> subset)
      : std::domain_error(what), subset_(std::move(subset)) {}
  const std::vector<int>& subset() const { return subset_; }

private:
  std::vector<int> subset_;  // 1-based member indices
};

// One zero signed sum witnessing non-genericity of a length vector.
struct DegeneracyWitness {
  std::string which;       // "lo", "hi" or "" for a standalone vector
  std::vector<int> signs;  // entries are +1 / -1, one per leg
};

class GenericityError : public std::domain_error {
public:
  GenericityError(const std::string& what, std::vector<DegeneracyWitness> witnesses)
      : std::domain_error(what), witnesses_(std::move(witnesses)) {}
  const std::vector<DegeneracyWitness>& witnesses() const { return witnesses_; }

private:
  std::vector<DegeneracyWitness> witnesses_;
};

// Operation asked of an instance outside its supported dimension.
class UnsupportedDimensionError : public std::invalid_argument {
public:
  explicit UnsupportedDimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace teleskope
