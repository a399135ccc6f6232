#pragma once

#include "halldec/instance.hpp"

namespace halldec {

/// n pigeons into n-1 holes: always unsatisfiable. Throws std::invalid_argument
/// for n < 2.
InstanceFile gen_php(int n);

/// Graceful labeling of the double wheel DW_n: an n-cycle joined to two hub
/// nodes (each hub adjacent to every rim node), q = 3n edges. Node labels are
/// distinct in [0,q]; edge labels |f(u)-f(v)| form a permutation of 1..q.
/// Throws std::invalid_argument for n < 3.
InstanceFile gen_double_wheel(int n);

}  // namespace halldec
