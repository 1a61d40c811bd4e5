#pragma once

#include "sepkit/creal.hpp"
#include "sepkit/seqcode.hpp"

namespace sepkit {

// An effective metric space over an indexed dense sequence. Distances
// between dense points are exact rationals for all three concrete spaces
// here, which is what lets the selection tree test its conditions exactly.
struct MetricSpace {
  std::string id;
  std::function<Rational(const Nat&, const Nat&)> dist;
};

struct Ball {
  Nat center;
  Rational radius;
};

// the real line with the fixed rational enumeration
MetricSpace real_line();

// Cantor space; dense point n is (decoded binary string)^000..., d = 2^-i at
// the first disagreement
MetricSpace cantor_space();

// R^N with d(x,y) = sup_n 2^-n |x_n-y_n| / (1 + |x_n-y_n|); dense point n is
// the decoded tuple of rational indices padded with zeros
MetricSpace product_space();

// rational tuple helpers for product-space dense points
std::vector<Rational> product_point_coords(const Nat& index);
Nat product_point_index(const std::vector<Rational>& coords);

// t/(1+t) and its inverse, the coordinate profile of the product metric
Rational metric_squash(const Rational& t);
// greatest coordinate deviation allowed at coordinate n inside a ball of
// radius r (nullopt when unconstrained, i.e. 2^n r >= 1)
std::optional<Rational> coord_slack(std::uint64_t n, const Rational& r);

// a point of R^N with demandable coordinates
struct ProductPoint {
  std::function<CReal(std::uint64_t)> coord;
};

// point named by a Cauchy index stream into product-space dense points
ProductPoint product_point_from_name(const Stream& name);

}  // namespace sepkit
