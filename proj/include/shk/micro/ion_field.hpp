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

#include "shk/common.hpp"
#include "shk/lorentz/params.hpp"
#include "shk/simd/radial_kernel.hpp"

#include <cstdint>
#include <vector>

namespace shk::micro {

// Static ions in a periodic cube, each carrying the regularized screened
// potential, bucketed into cells no smaller than the support radius.
//
// An eager field holds a fixed list of ions. A lazy field is a Poisson
// field: each cell draws its ions from its own counter-based stream the
// first time a lookup touches it, so only the neighbourhood of a trajectory
// is ever materialized. A lazy field is not safe to share across threads.
class IonField {
 public:
  IonField(const lorentz::LorentzParams& params, double box, const std::vector<Vec3>& positions);

  static IonField lazy(const lorentz::LorentzParams& params, double box, std::uint64_t seed,
                       std::uint64_t stream);

  double box() const { return box_; }
  const lorentz::LorentzParams& params() const { return params_; }
  int cells_per_dim() const { return cells_; }
  bool is_lazy() const { return lazy_; }
  // Ions materialized so far (all of them for an eager field).
  std::size_t size() const;
  std::vector<Vec3> positions() const;

  // Electron acceleration -(q/m) grad phi and potential phi at x.
  void evaluate(const Vec3& x, Vec3& acceleration, double& potential) const;
  Vec3 acceleration(const Vec3& x) const;
  double potential(const Vec3& x) const;
  // 1/2 |v|^2 + (q/m) phi(x).
  double energy(const Vec3& x, const Vec3& v) const;

 private:
  struct Cell {
    bool filled = false;
    std::vector<double> xs, ys, zs;
  };

  IonField(const lorentz::LorentzParams& params, double box);
  const Cell& cell(std::size_t index) const;
  int cell_coordinate(double c) const;

  lorentz::LorentzParams params_;
  double box_;
  simd::RadialShape shape_;
  double ion_charge_ = 0.0;
  int cells_ = 1;
  double cell_size_ = 0.0;
  bool lazy_ = false;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  mutable std::vector<Cell> cell_store_;
};

// N = round(Lambda * box^3) ions, i.i.d. uniform. Deterministic in
// (seed, stream).
IonField sample_ion_field(const lorentz::LorentzParams& params, double box, std::uint64_t seed,
                          std::uint64_t stream = 0);

// Empty field (no ions) with the same parameters.
IonField empty_ion_field(const lorentz::LorentzParams& params, double box);

}  // namespace shk::micro
