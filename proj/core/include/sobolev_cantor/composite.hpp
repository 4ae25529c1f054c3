// Copyright 2026 The sobolev_cantor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sobolev_cantor/cantor_map.hpp"
#include "sobolev_cantor/stage_map.hpp"
#include "sobolev_cantor/tentacles.hpp"
#include "sobolev_cantor/tower_map.hpp"

namespace sobolev_cantor {

/// T1: g^-1 L^-1 h,  T2: g^-1 L^-1 h~ L g,  W: g^-1 L^-1 h~^-1 L g,  FL: S L g.
enum class Variant { T1, T2, W, FL };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// x -> (x', x_n |x'|) on Q(0, 1 - delta), blended linearly in |x|_inf to the
/// identity on the boundary. Not injective.
class CollapseMap final : public StageMap {
 public:
  CollapseMap(int n, double delta);
  int dim() const override { return n_; }
  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;  // throws DomainError
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

 private:
  double blend(const Vec& x, int* arg, double* slope) const;
  int n_;
  double delta_;
};

/// One stage of a counterexample mapping.
class CompositeStage final : public StageMap {
 public:
  /// Builds the stage with demo tentacle parameters (squeeze for T1, stretch
  /// for T2 and W). FL uses alpha_k = 1/(k+1) for the source schedule.
  CompositeStage(Variant variant, int n, double beta, int k);
  /// Uses caller-supplied tentacle parameters (must cover level k).
  CompositeStage(Variant variant, double beta, int k, TentacleParams params);

  Variant variant() const { return variant_; }
  int stage() const { return k_; }
  int dim() const override { return n_; }
  double beta() const { return beta_; }

  /// Throws DomainError outside [-1,1]^n.
  Vec eval(const Vec& x) const override;
  Vec inverse(const Vec& y) const override;
  Mat derivative(const Vec& x) const override;
  std::uint64_t piece(const Vec& x) const override;

  const CantorHomeomorphism& g() const { return *g_; }
  const TowerMap& tower() const { return *l_; }
  /// Null for FL.
  const TentacleMap* tentacles() const { return h_.get(); }
  const MapChain& chain() const { return *chain_; }

 private:
  void assemble();

  Variant variant_;
  int n_;
  double beta_;
  int k_;
  std::shared_ptr<const CantorHomeomorphism> g_;
  std::shared_ptr<const TowerMap> l_;
  std::shared_ptr<const TentacleMap> h_;
  std::shared_ptr<const MapChain> chain_;
};

/// Samples of the stage-k tentacle axis and their images.
struct ContinuumWitness {
  Variant variant = Variant::T1;
  int stage = 0;
  std::vector<int> word;     // tower word used (input extended to length k)
  std::vector<Vec> domain;   // ordered samples, tower cell center first
  std::vector<Vec> images;
  double endpoint_distance = 0.0;
  double image_diameter = 0.0;
  /// Distance from the image of the tower cell center to the matching C_A cell center.
  double cell_center_error = 0.0;
};

/// For T1 the samples lie on the axis of T_{v^(k)} and the images are f_k of
/// them. For T2 and W the samples are (L g)^-1 of that axis and the images
/// are w_k of them. `word` is a C_A address, padded with its last letter
/// when shorter than k.
ContinuumWitness continuum_witness(const CompositeStage& f, const std::vector<int>& word,
                                   int samples = 257);

}  // namespace sobolev_cantor
