/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <vector>

namespace shk::models {

// Bessel function of the first kind J_n(x), integer order.
double bessel_j(int n, double x);

// J'_n(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2.
double bessel_j_derivative(int n, double x);

// J_0(x) .. J_{max_order}(x) from one downward recurrence.
std::vector<double> bessel_j_orders(int max_order, double x);

}  // namespace shk::models
