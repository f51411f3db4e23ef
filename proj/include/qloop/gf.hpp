// Small finite fields GF(q) for q in {2,3,4,5,7,8,9,11,13,16,25}, with dense
// matrices, Gaussian elimination, and subspace enumeration in reduced row
// echelon form. Everything here is sized for exhaustive desk-scale counting.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace qloop {

class GF {
public:
  explicit GF(int q);
  int q() const { return q_; }
  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const;

  static const GF& get(int q);  // shared instances

private:
  int q_;
  std::vector<uint8_t> add_, mul_, neg_, inv_;
};

class Mat {
public:
  Mat() : r_(0), c_(0) {}
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}
  int rows() const { return r_; }
  int cols() const { return c_; }
  uint8_t& at(int i, int j) { return a_[i * c_ + j]; }
  uint8_t at(int i, int j) const { return a_[i * c_ + j]; }
  bool operator==(const Mat& o) const = default;

  static Mat identity(int n);
  static Mat mul(const GF& f, const Mat& x, const Mat& y);

private:
  int r_, c_;
  std::vector<uint8_t> a_;
};

int rank(const GF& f, Mat m);
// basis of the right kernel, as rows
Mat kernel(const GF& f, const Mat& m);
// coordinates of v in the row space of an RREF basis; throws if outside
std::vector<uint8_t> coords_in_rowspace(const GF& f, const Mat& basis, const std::vector<uint8_t>& v);

// all subspaces of F_q^n of each dimension, each given by an RREF basis matrix
std::vector<Mat> all_subspaces(const GF& f, int n);
bool in_rowspace(const GF& f, const Mat& basis, const std::vector<uint8_t>& v);

}  // namespace qloop
