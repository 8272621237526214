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

#include "shk/micro/ion_field.hpp"

#include "shk/lorentz/potential.hpp"
#include "shk/random/philox.hpp"

#include <algorithm>
#include <cmath>

namespace shk::micro {

namespace {

int wrap_cell(int i, int n) { return ((i % n) + n) % n; }

// Poisson draw by sequential inversion; the mean per cell is a few tens.
std::size_t poisson(random::Sampler& sampler, double mean) {
  const double u = sampler.uniform();
  double p = std::exp(-mean), cdf = p;
  std::size_t k = 0;
  while (u > cdf && k < 100000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p < 1e-300 && static_cast<double>(k) > mean) break;
  }
  return k;
}

}  // namespace

IonField::IonField(const lorentz::LorentzParams& params, double box)
    : params_(params), box_(box) {
  params_.validate();
  const lorentz::RegularizedPotential g(params_.plasma_parameter, params_.delta_reg);
  if (!(box >= 4.0 * g.support_radius()) || !std::isfinite(box)) {
    throw DomainError("box side must be at least four support radii");
  }
  shape_.lambda = params_.plasma_parameter;
  shape_.delta = params_.delta_reg;
  shape_.core = g.core_coefficients();
  shape_.taper = g.taper_coefficients();
  ion_charge_ = params_.effective_ion_charge();
  cells_ = static_cast<int>(std::floor(box_ / g.support_radius()));
  if (cells_ < 3) cells_ = 1;
  if (static_cast<double>(cells_) * cells_ * cells_ > 1e8) throw DomainError("box too large");
  cell_size_ = box_ / cells_;
  cell_store_.resize(static_cast<std::size_t>(cells_) * cells_ * cells_);
}

IonField::IonField(const lorentz::LorentzParams& params, double box,
                   const std::vector<Vec3>& positions)
    : IonField(params, box) {
  for (auto& c : cell_store_) c.filled = true;
  for (const Vec3& r : positions) {
    if (!r.allFinite()) throw DomainError("ion position must be finite");
    const Vec3 w = r.unaryExpr([this](double c) { return c - box_ * std::floor(c / box_); });
    const std::size_t index =
        (static_cast<std::size_t>(cell_coordinate(w[0])) * cells_ + cell_coordinate(w[1])) * cells_ +
        cell_coordinate(w[2]);
    Cell& c = cell_store_[index];
    c.xs.push_back(w[0]);
    c.ys.push_back(w[1]);
    c.zs.push_back(w[2]);
  }
}

IonField IonField::lazy(const lorentz::LorentzParams& params, double box, std::uint64_t seed,
                        std::uint64_t stream) {
  if (stream >= (std::uint64_t{1} << 36)) throw DomainError("lazy field stream out of range");
  IonField f(params, box);
  f.lazy_ = true;
  f.seed_ = seed;
  f.stream_ = stream;
  return f;
}

int IonField::cell_coordinate(double c) const {
  const double w = c - box_ * std::floor(c / box_);
  return std::min(cells_ - 1, static_cast<int>(w / cell_size_));
}

const IonField::Cell& IonField::cell(std::size_t index) const {
  Cell& c = cell_store_[index];
  if (c.filled) return c;
  // Lazy fill: stream bits above 27 carry the field, below them the cell.
  random::Sampler sampler(seed_, (stream_ << 27) | index);
  const int ix = static_cast<int>(index / (static_cast<std::size_t>(cells_) * cells_));
  const int iy = static_cast<int>(index / cells_ % cells_);
  const int iz = static_cast<int>(index % cells_);
  const double volume = cell_size_ * cell_size_ * cell_size_;
  const std::size_t count = poisson(sampler, params_.ion_density() * volume);
  c.xs.resize(count);
  c.ys.resize(count);
  c.zs.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    c.xs[k] = (ix + sampler.uniform()) * cell_size_;
    c.ys[k] = (iy + sampler.uniform()) * cell_size_;
    c.zs[k] = (iz + sampler.uniform()) * cell_size_;
  }
  c.filled = true;
  return c;
}

std::size_t IonField::size() const {
  std::size_t n = 0;
  for (const auto& c : cell_store_) n += c.xs.size();
  return n;
}

std::vector<Vec3> IonField::positions() const {
  std::vector<Vec3> out;
  for (const auto& c : cell_store_) {
    for (std::size_t k = 0; k < c.xs.size(); ++k) out.emplace_back(c.xs[k], c.ys[k], c.zs[k]);
  }
  return out;
}

void IonField::evaluate(const Vec3& x, Vec3& acceleration, double& potential) const {
  const simd::RadialKernel kernel = simd::active_kernel();
  const std::array<double, 3> point{x[0], x[1], x[2]};
  simd::RadialSum sum;
  auto add = [&](std::size_t index) {
    const Cell& c = cell(index);
    if (!c.xs.empty()) {
      sum += kernel(shape_, c.xs.data(), c.ys.data(), c.zs.data(), c.xs.size(), point, box_);
    }
  };
  if (cells_ == 1) {
    add(0);
  } else {
    const int cx = cell_coordinate(x[0]), cy = cell_coordinate(x[1]), cz = cell_coordinate(x[2]);
    for (int ix = -1; ix <= 1; ++ix) {
      for (int iy = -1; iy <= 1; ++iy) {
        for (int iz = -1; iz <= 1; ++iz) {
          add((static_cast<std::size_t>(wrap_cell(cx + ix, cells_)) * cells_ +
               wrap_cell(cy + iy, cells_)) * cells_ + wrap_cell(cz + iz, cells_));
        }
      }
    }
  }
  const double qm = params_.charge_to_mass;
  acceleration = -qm * ion_charge_ * Vec3(sum.gx, sum.gy, sum.gz);
  potential = ion_charge_ * sum.value;
}

Vec3 IonField::acceleration(const Vec3& x) const {
  Vec3 a;
  double phi;
  evaluate(x, a, phi);
  return a;
}

double IonField::potential(const Vec3& x) const {
  Vec3 a;
  double phi;
  evaluate(x, a, phi);
  return phi;
}

double IonField::energy(const Vec3& x, const Vec3& v) const {
  return 0.5 * v.squaredNorm() + params_.charge_to_mass * potential(x);
}

IonField sample_ion_field(const lorentz::LorentzParams& params, double box, std::uint64_t seed,
                          std::uint64_t stream) {
  if (!(box > 0.0) || !std::isfinite(box)) throw DomainError("box side must be positive");
  const double expected = params.ion_density() * box * box * box;
  if (expected > 4.0e9) throw DomainError("ion count too large");
  const auto count = static_cast<std::size_t>(std::llround(expected));
  random::Sampler sampler(seed, stream);
  std::vector<Vec3> positions(count);
  for (auto& r : positions) {
    const double x = sampler.uniform(), y = sampler.uniform(), z = sampler.uniform();
    r = box * Vec3(x, y, z);
  }
  return IonField(params, box, positions);
}

IonField empty_ion_field(const lorentz::LorentzParams& params, double box) {
  return IonField(params, box, {});
}

}  // namespace shk::micro
