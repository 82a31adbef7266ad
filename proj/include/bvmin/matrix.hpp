#pragma once

#include <vector>

#include "bvmin/rational.hpp"

namespace bvmin {

using Mat = std::vector<std::vector<Rat>>;

Mat mat_zero(int rows, int cols);
Mat mat_id(int n);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
Mat mat_inverse(const Mat& a);  // throws on a singular matrix
bool mat_is_zero(const Mat& a);
int mat_rank(Mat a);

std::vector<Rat> mat_apply(const Mat& a, const std::vector<Rat>& v);

}  // namespace bvmin
